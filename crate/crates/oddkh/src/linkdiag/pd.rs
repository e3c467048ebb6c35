//! PD code input: JSON objects, bare JSON lists, and `PD[X[a,b,c,d], ...]`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{ArcId, Fallback, LinkDiagram, Slot};
use crate::error::{Error, Result};

/// The serialized form of a diagram.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PdSpec {
    pub pd: Vec<[ArcId; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<i8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free_circles: Option<usize>,
    /// Explicit arc ids for the crossing-free circles. Defaults to the ids
    /// following the largest arc of `pd`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free_arcs: Option<Vec<ArcId>>,
}

impl PdSpec {
    pub fn to_diagram(&self) -> Result<LinkDiagram> {
        let free = match (&self.free_arcs, self.free_circles) {
            (Some(arcs), Some(k)) if arcs.len() != k => {
                return Err(Error::Diagram(format!("free_circles is {k} but {} free arcs are listed", arcs.len())))
            }
            (Some(arcs), _) => arcs.clone(),
            (None, k) => {
                let max = self.pd.iter().flatten().copied().max().unwrap_or(0);
                (1..=k.unwrap_or(0) as ArcId).map(|i| max + i).collect()
            }
        };
        if let Some(s) = &self.signs {
            if s.len() != self.pd.len() {
                return Err(Error::Diagram(format!("{} signs given for {} crossings", s.len(), self.pd.len())));
            }
            if let Some(bad) = s.iter().find(|&&v| v != 1 && v != -1) {
                return Err(Error::Diagram(format!("crossing sign {bad} is not +1 or -1")));
            }
        }
        let mut heads: HashMap<ArcId, Slot> = HashMap::new();
        for (k, c) in self.pd.iter().enumerate() {
            if let Some(prev) = heads.insert(c[0], Slot::new(k, 0)) {
                return Err(Error::Orientation(format!(
                    "arc {} enters both crossing {} and crossing {k} as an understrand",
                    c[0], prev.crossing
                )));
            }
        }
        if let Some(signs) = &self.signs {
            for (k, (c, s)) in self.pd.iter().zip(signs).enumerate() {
                let p = if *s > 0 { 3 } else { 1 };
                heads.entry(c[p]).or_insert(Slot::new(k, p as u8));
            }
        }
        let d = LinkDiagram::orient(self.pd.clone(), free, &heads, Fallback::Numbering)?;
        for (k, (c, raw)) in d.crossings().iter().zip(&self.pd).enumerate() {
            if c.slots != *raw {
                return Err(Error::Orientation(format!("crossing {k}: slot 0 is not an incoming understrand")));
            }
            if let Some(signs) = &self.signs {
                if c.sign != signs[k] {
                    return Err(Error::Orientation(format!(
                        "crossing {k}: sign {} contradicts the strand orientations",
                        signs[k]
                    )));
                }
            }
        }
        Ok(d)
    }
}

/// Parses a PD code. Accepts a JSON object
/// `{"pd": [[a,b,c,d],...], "signs": [...], "free_circles": k}`, a bare JSON
/// list of 4-tuples, or Mathematica-style `PD[X[1,4,2,5], ...]`.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    parse_spec(text)?.to_diagram()
}

pub fn parse_spec(text: &str) -> Result<PdSpec> {
    let t = text.trim_start();
    let offset = text.len() - t.len();
    if t.starts_with('{') {
        serde_json::from_str::<PdSpec>(text).map_err(|e| json_error(text, &e))
    } else if t.starts_with('[') {
        let pd = serde_json::from_str::<Vec<[ArcId; 4]>>(text).map_err(|e| json_error(text, &e))?;
        Ok(PdSpec { pd, ..Default::default() })
    } else if t.starts_with("PD") {
        Ok(PdSpec { pd: parse_mathematica(text)?, ..Default::default() })
    } else if t.is_empty() {
        Err(Error::Parse { pos: offset, msg: "empty input".into() })
    } else {
        Err(Error::Parse { pos: offset, msg: "expected '{', '[' or 'PD['".into() })
    }
}

fn json_error(text: &str, e: &serde_json::Error) -> Error {
    let mut pos = 0;
    for (i, line) in text.split_inclusive('\n').enumerate() {
        if i + 1 == e.line() {
            pos += e.column().saturating_sub(1).min(line.len());
            break;
        }
        pos += line.len();
    }
    Error::Parse { pos, msg: e.to_string() }
}

struct Lexer<'a> {
    s: &'a [u8],
    i: usize,
}

impl Lexer<'_> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> Result<()> {
        self.ws();
        if self.s[self.i..].starts_with(tok.as_bytes()) {
            self.i += tok.len();
            Ok(())
        } else {
            Err(Error::Parse { pos: self.i, msg: format!("expected {tok:?}") })
        }
    }

    fn peek(&mut self, tok: &str) -> bool {
        self.ws();
        self.s[self.i..].starts_with(tok.as_bytes())
    }

    fn number(&mut self) -> Result<ArcId> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(Error::Parse { pos: start, msg: "expected a positive integer".into() });
        }
        let v: ArcId = std::str::from_utf8(&self.s[start..self.i])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse { pos: start, msg: "arc id out of range".into() })?;
        if v == 0 {
            return Err(Error::Parse { pos: start, msg: "arc ids must be positive".into() });
        }
        Ok(v)
    }
}

fn parse_mathematica(text: &str) -> Result<Vec<[ArcId; 4]>> {
    let mut lx = Lexer { s: text.as_bytes(), i: 0 };
    lx.eat("PD")?;
    lx.eat("[")?;
    let mut out = Vec::new();
    if !lx.peek("]") {
        loop {
            lx.eat("X")?;
            lx.eat("[")?;
            let mut c = [0; 4];
            for (j, slot) in c.iter_mut().enumerate() {
                if j > 0 {
                    lx.eat(",")?;
                }
                *slot = lx.number()?;
            }
            lx.eat("]")?;
            out.push(c);
            if lx.peek(",") {
                lx.eat(",")?;
            } else {
                break;
            }
        }
    }
    lx.eat("]")?;
    lx.ws();
    if lx.i != text.len() {
        return Err(Error::Parse { pos: lx.i, msg: "trailing input".into() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_with_free_circle() {
        let d = parse_pd(r#"{"pd": [], "free_circles": 1}"#).unwrap();
        assert_eq!(d.n_crossings(), 0);
        assert_eq!(d.n_components(), 1);
    }

    #[test]
    fn hopf_and_trefoil() {
        let h = parse_pd("[[1,3,2,4],[3,1,4,2]]").unwrap();
        assert_eq!((h.n_crossings(), h.n_components(), h.writhe()), (2, 2, 2));
        let t = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap();
        assert_eq!((t.n_crossings(), t.n_components(), t.writhe()), (3, 1, -3));
    }

    #[test]
    fn diagnostics() {
        match parse_pd("[[1,2,3,4],[1,2,3") {
            Err(Error::Parse { pos, .. }) => assert!(pos >= 16),
            other => panic!("{other:?}"),
        }
        match parse_pd("PD[X[1,2,2],]") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 10),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_pd("[[1,1,2,3]]"), Err(Error::Diagram(_))));
    }

    #[test]
    fn explicit_signs_checked() {
        assert!(parse_pd(r#"{"pd": [[1,3,2,4],[3,1,4,2]], "signs": [1,1]}"#).is_ok());
        assert!(matches!(
            parse_pd(r#"{"pd": [[1,3,2,4],[3,1,4,2]], "signs": [-1,-1]}"#),
            Err(Error::Orientation(_))
        ));
    }
}
