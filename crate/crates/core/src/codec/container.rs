//! The `SDN1` binary container.
//!
//! ```text
//! offset  size  field
//! 0       4     magic "SDN1"
//! 4       4     version (u32, big-endian), currently 1
//! 8       8     N, payload length in bits (u64, big-endian)
//! 16      8     k, number of codewords (u64, big-endian)
//! 24      ceil(N/8)  payload; bit 0 is the most significant bit of byte 0
//! ```
//!
//! Padding bits after bit `N - 1` must be zero.

use std::io::{Read, Write};

use super::SdnSequence;
use crate::bits::BitSequence;
use crate::error::{Error, Result};

pub const CONTAINER_MAGIC: [u8; 4] = *b"SDN1";
pub const CONTAINER_VERSION: u32 = 1;
const HEADER_LEN: usize = 24;

/// Writes the written part of `seq` (bits `[0, cursor)`).
pub fn write_container<W: Write>(mut out: W, seq: &SdnSequence) -> std::io::Result<()> {
    let n = seq.cursor();
    let mut bits = seq.bits().clone();
    bits.truncate(n);
    let mut header = [0u8; HEADER_LEN];
    header[..4].copy_from_slice(&CONTAINER_MAGIC);
    header[4..8].copy_from_slice(&CONTAINER_VERSION.to_be_bytes());
    header[8..16].copy_from_slice(&(n as u64).to_be_bytes());
    header[16..24].copy_from_slice(&(seq.count() as u64).to_be_bytes());
    out.write_all(&header)?;
    out.write_all(&bits.to_bytes())?;
    out.flush()
}

/// Reads and validates a container: the payload must hold exactly `k`
/// codewords filling all `N` bits.
pub fn read_container<R: Read>(mut input: R) -> Result<SdnSequence> {
    let mut buf = Vec::new();
    input
        .read_to_end(&mut buf)
        .map_err(|e| Error::Format(format!("read failed: {e}")))?;
    if buf.len() < HEADER_LEN {
        return Err(Error::Format(format!(
            "container has {} bytes, shorter than the {HEADER_LEN}-byte header",
            buf.len()
        )));
    }
    if buf[..4] != CONTAINER_MAGIC {
        return Err(Error::Format("bad magic, expected \"SDN1\"".into()));
    }
    let version = u32::from_be_bytes(buf[4..8].try_into().unwrap());
    if version != CONTAINER_VERSION {
        return Err(Error::Format(format!(
            "unsupported container version {version}"
        )));
    }
    let n = u64::from_be_bytes(buf[8..16].try_into().unwrap());
    let k = u64::from_be_bytes(buf[16..24].try_into().unwrap());
    let n = usize::try_from(n).map_err(|_| Error::Format("N does not fit in memory".into()))?;
    let k = usize::try_from(k).map_err(|_| Error::Format("k does not fit in memory".into()))?;
    let payload = &buf[HEADER_LEN..];
    if payload.len() != n.div_ceil(8) {
        return Err(Error::Format(format!(
            "payload has {} bytes, header announces {} bits",
            payload.len(),
            n
        )));
    }
    if k > n {
        return Err(Error::Format(format!("{k} codewords cannot fit in {n} bits")));
    }
    let bits = BitSequence::from_bytes(payload, n)?;
    SdnSequence::from_bits(bits, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codeword_bytes() {
        let seq = SdnSequence::from_values(&[1, 2, 3, 4]);
        let mut out = Vec::new();
        write_container(&mut out, &seq).unwrap();
        assert_eq!(&out[..4], b"SDN1");
        assert_eq!(u64::from_be_bytes(out[8..16].try_into().unwrap()), 20);
        assert_eq!(u64::from_be_bytes(out[16..24].try_into().unwrap()), 4);
        // 101 11010 11011 1110100 -> 10111010 11011111 0100(0000)
        assert_eq!(&out[24..], &[0b1011_1010, 0b1101_1111, 0b0100_0000]);
        let back = read_container(&out[..]).unwrap();
        assert_eq!(back.to_vec().unwrap(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn empty_container() {
        let seq = SdnSequence::with_capacity(0);
        let mut out = Vec::new();
        write_container(&mut out, &seq).unwrap();
        assert_eq!(out.len(), 24);
        let back = read_container(&out[..]).unwrap();
        assert_eq!(back.count(), 0);
    }

    #[test]
    fn writes_only_the_used_prefix() {
        let mut seq = SdnSequence::with_capacity(100);
        seq.push(0).unwrap();
        let mut out = Vec::new();
        write_container(&mut out, &seq).unwrap();
        assert_eq!(out.len(), 25);
        assert_eq!(read_container(&out[..]).unwrap().len_bits(), 1);
    }

    #[test]
    fn rejects_damage() {
        let seq = SdnSequence::from_values(&[5, 0]);
        let mut good = Vec::new();
        write_container(&mut good, &seq).unwrap();

        let mut bad = good.clone();
        bad[0] = b'X';
        assert!(matches!(read_container(&bad[..]), Err(Error::Format(_))));

        let mut bad = good.clone();
        bad[7] = 9;
        assert!(matches!(read_container(&bad[..]), Err(Error::Format(_))));

        let mut bad = good.clone();
        bad[23] = 3;
        assert!(read_container(&bad[..]).is_err());

        assert!(read_container(&good[..good.len() - 1]).is_err());
        assert!(read_container(&good[..10]).is_err());
    }
}
