//! Browser bindings. Each exported function takes plain text and returns
//! a JSON string; errors come back as JavaScript exceptions.

use num_bigint::BigUint;
use serde::Serialize;
use wasm_bindgen::prelude::*;

use sdn_core::codec::SdnSequence;
use sdn_core::iso::{isomorphic, IsoInput, IsoOptions};
use sdn_core::rank::{CompetitiveRankStructure, DenseRankStructure};
use sdn_core::sort::{sort_tracked, SortConfig};
use sdn_core::tree::TreeInput;

#[derive(Serialize, Debug, PartialEq)]
pub struct Encoded {
    pub bits: usize,
    pub count: usize,
    pub codewords: Vec<String>,
}

#[derive(Serialize, Debug, PartialEq)]
pub struct Ranked {
    pub values: Vec<String>,
    pub sorted: Vec<String>,
    /// `origin[i]` is the input index of `sorted[i]`.
    pub origin: Vec<usize>,
    pub dense_ranks: Vec<u64>,
    pub ranks: Vec<u64>,
}

#[derive(Serialize, Debug, PartialEq)]
pub struct Verdict {
    pub isomorphic: bool,
    pub nodes: [usize; 2],
    pub rounds: usize,
}

fn parse(text: &str) -> Result<Vec<BigUint>, String> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            if t.bytes().all(|b| b.is_ascii_digit()) {
                Ok(BigUint::parse_bytes(t.as_bytes(), 10).unwrap())
            } else {
                Err(format!("{t:?} is not a nonnegative integer"))
            }
        })
        .collect()
}

pub fn encode_text(text: &str) -> Result<Encoded, String> {
    let seq = SdnSequence::from_biguints(&parse(text)?);
    let all = seq.bits().to_string();
    let codewords = seq
        .codewords()
        .map(|cw| all[cw.start..cw.end()].to_string())
        .collect();
    Ok(Encoded { bits: seq.len_bits(), count: seq.count(), codewords })
}

pub fn sort_and_rank_text(text: &str) -> Result<Ranked, String> {
    let values = parse(text)?;
    let seq = SdnSequence::from_biguints(&values);
    let cfg = SortConfig::for_bits(seq.len_bits().max(4)).map_err(|e| e.to_string())?;
    let (sorted, origin) = sort_tracked(&seq, &cfg).map_err(|e| e.to_string())?;
    let dense = DenseRankStructure::build(&seq).map_err(|e| e.to_string())?;
    let comp = CompetitiveRankStructure::build(&seq).map_err(|e| e.to_string())?;
    Ok(Ranked {
        values: values.iter().map(ToString::to_string).collect(),
        sorted: sorted.to_biguints().iter().map(ToString::to_string).collect(),
        origin,
        dense_ranks: seq.iter().map(|(p, x)| dense.rank(p, x)).collect(),
        ranks: seq.iter().map(|(p, x)| comp.rank(p, x)).collect(),
    })
}

pub fn tree_iso_text(a: &str, b: &str, rooted: bool, colored: bool) -> Result<Verdict, String> {
    let ta = TreeInput::parse(a).map_err(|e| format!("first tree: {e}"))?;
    let tb = TreeInput::parse(b).map_err(|e| format!("second tree: {e}"))?;
    fn side(t: &TreeInput, rooted: bool, colored: bool) -> IsoInput<'_> {
        let mut i = IsoInput::unrooted(&t.tree);
        if rooted {
            i.root = Some(t.root.unwrap_or(0));
        }
        if colored {
            i.colors = t.colors.as_deref();
        }
        i
    }
    let (ia, ib) = (side(&ta, rooted, colored), side(&tb, rooted, colored));
    if colored && (ia.colors.is_none() || ib.colors.is_none()) {
        return Err("both trees need a colors line".into());
    }
    let (iso, stats) =
        isomorphic(&ia, &ib, &IsoOptions::default()).map_err(|e| e.to_string())?;
    Ok(Verdict { isomorphic: iso, nodes: [ta.tree.len(), tb.tree.len()], rounds: stats.rounds })
}

fn json<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    r.map(|v| serde_json::to_string(&v).expect("plain data serializes"))
        .map_err(|e| JsError::new(&e))
}

/// Codewords of whitespace- or comma-separated integers.
#[wasm_bindgen]
pub fn encode_numbers(text: &str) -> Result<String, JsError> {
    json(encode_text(text))
}

/// Sorted order, dense ranks, and ranks of the integers.
#[wasm_bindgen]
pub fn sort_and_rank(text: &str) -> Result<String, JsError> {
    json(sort_and_rank_text(text))
}

/// Isomorphism verdict for two trees in edge-list or parenthesis form.
#[wasm_bindgen]
pub fn tree_iso(a: &str, b: &str, rooted: bool, colored: bool) -> Result<String, JsError> {
    json(tree_iso_text(a, b, rooted, colored))
}
