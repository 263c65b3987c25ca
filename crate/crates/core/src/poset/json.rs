//! JSON poset exchange format:
//! `{ "elements": [labels...], "covers": [[i, j], ...], "rank": [r_0, ...] }`.
//! `elements` and `rank` are optional; when `rank` is present it is
//! validated as an explicit weak rank function.

use serde::{Deserialize, Serialize};

use super::{Poset, PosetError, RankFn};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    pub covers: Vec<(u32, u32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

/// Parse a poset (and optional explicit rank function) from JSON text.
/// The element count is taken from `elements`, from `n`, or from the
/// largest cover index.
pub fn poset_from_json(text: &str) -> Result<(Poset, Option<RankFn>), PosetJsonError> {
    let dto: PosetJson = serde_json::from_str(text)?;
    let n = dto
        .elements
        .as_ref()
        .map(|e| e.len())
        .or(dto.n)
        .or_else(|| {
            dto.covers
                .iter()
                .map(|&(a, b)| a.max(b) as usize + 1)
                .max()
        })
        .ok_or(PosetJsonError::Empty)?;
    let poset = Poset::from_covers_labeled(n, &dto.covers, dto.elements)?;
    let rank = match dto.rank {
        Some(rho) => Some(RankFn::explicit(&poset, rho)?),
        None => None,
    };
    Ok((poset, rank))
}

pub fn poset_to_json(poset: &Poset, rank: Option<&RankFn>) -> String {
    let dto = PosetJson {
        elements: poset.labels().map(|l| l.to_vec()),
        covers: poset.covers().to_vec(),
        rank: rank.map(|r| (0..poset.n() as u32).map(|v| r.rho_elem(v)).collect()),
        n: Some(poset.n()),
    };
    serde_json::to_string_pretty(&dto).expect("poset serialization cannot fail")
}

#[derive(Debug, thiserror::Error)]
pub enum PosetJsonError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("poset JSON gives no way to determine the element count")]
    Empty,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::chain;

    #[test]
    fn round_trip() {
        let c3 = chain(3);
        let rk = RankFn::graded(&c3).unwrap();
        let text = poset_to_json(&c3, Some(&rk));
        let (back, rank) = poset_from_json(&text).unwrap();
        assert_eq!(back, c3);
        assert_eq!(rank.unwrap().rho(0, 2), 2);
    }

    #[test]
    fn parse_minimal() {
        let (p, rank) = poset_from_json(r#"{"covers": [[0,1],[1,2]]}"#).unwrap();
        assert_eq!(p.n(), 3);
        assert!(rank.is_none());
    }

    #[test]
    fn rejects_cycles() {
        assert!(poset_from_json(r#"{"covers": [[0,1],[1,0]]}"#).is_err());
    }
}
