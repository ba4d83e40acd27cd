use num_bigint::BigUint;

/// Where parsing of the number list failed.
#[derive(Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub token: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "line {}, column {}: {:?} is not a nonnegative decimal integer",
            self.line, self.column, self.token
        )
    }
}

/// Whitespace-separated nonnegative decimal integers of any size.
pub fn parse_numbers(text: &str) -> Result<Vec<BigUint>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let mut rest = line;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let tail = &rest[start..];
            let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
            let token = &tail[..len];
            let column = line[..offset + start].chars().count() + 1;
            if !token.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ParseError { line: i + 1, column, token: token.into() });
            }
            out.push(BigUint::parse_bytes(token.as_bytes(), 10).expect("digits only"));
            offset += start + len;
            rest = &tail[len..];
        }
    }
    Ok(out)
}
