use serde::{Deserialize, Serialize};

use super::rmoves::{r1_map, r2_map, Direction};
use super::{birth_diagram, birth_map, death_diagram, death_map, dot_map, saddle_map, Host};
use crate::complex::ChainMap;
use crate::cube::Theory;
use crate::error::{Error, Result};
use crate::linkdiag::{
    kink, kink_removal, r2_insert, r2_removal_at, saddle_construction, ArcId, LinkDiagram, PdSpec, R2Site, SaddleSite,
    Side,
};

fn one() -> i8 {
    1
}

fn yes() -> bool {
    true
}

/// One frame change of a movie.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MovieEvent {
    /// A new crossing-free circle, with the next unused arc id.
    Birth {},
    /// Death of the crossing-free circle `arc`.
    Death { arc: ArcId },
    Saddle {
        p: ArcId,
        q: ArcId,
        #[serde(default)]
        side: Side,
    },
    Dot { arc: ArcId },
    /// `do` adds a kink on `arc`; `undo` removes the kink at `crossing`.
    R1 {
        #[serde(default)]
        direction: Direction,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        arc: Option<ArcId>,
        #[serde(default = "one")]
        sign: i8,
        #[serde(default)]
        side: Side,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        crossing: Option<usize>,
    },
    /// `do` pushes `over` across `under`; `undo` removes the bigon at
    /// `crossings`, optionally across the face bounded by `face = [over, under]`.
    R2 {
        #[serde(default)]
        direction: Direction,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        over: Option<ArcId>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        under: Option<ArcId>,
        #[serde(default)]
        side: Side,
        #[serde(default = "yes")]
        over_along: bool,
        #[serde(default = "yes")]
        under_along: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        crossings: Option<[usize; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        face: Option<[ArcId; 2]>,
    },
}

impl MovieEvent {
    pub fn is_dot(&self) -> bool {
        matches!(self, MovieEvent::Dot { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovieScript {
    pub initial: PdSpec,
    pub events: Vec<MovieEvent>,
}

impl MovieScript {
    pub fn new(initial: &LinkDiagram, events: Vec<MovieEvent>) -> Self {
        MovieScript { initial: initial.spec(), events }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Clone, Debug)]
pub struct MovieResult {
    /// Diagrams frame by frame, starting with the initial one.
    pub frames: Vec<LinkDiagram>,
    pub map: ChainMap,
}

impl MovieResult {
    pub fn final_diagram(&self) -> &LinkDiagram {
        self.frames.last().expect("at least the initial frame")
    }
}

fn need<T>(v: Option<T>, what: &str) -> Result<T> {
    v.ok_or_else(|| Error::Move(format!("event needs `{what}`")))
}

/// The next host and the event's map. `None` means the diagram is unchanged.
fn apply(host: &Host, ev: &MovieEvent) -> Result<(Option<Host>, ChainMap)> {
    let d = &host.diagram;
    let theory = host.theory();
    Ok(match *ev {
        MovieEvent::Birth {} => {
            let (d1, a) = birth_diagram(d)?;
            let h1 = Host::new(&d1, theory)?;
            let f = birth_map(host, &h1, a)?;
            (Some(h1), f)
        }
        MovieEvent::Death { arc } => {
            let h1 = Host::new(&death_diagram(d, arc)?, theory)?;
            let f = death_map(host, &h1, arc)?;
            (Some(h1), f)
        }
        MovieEvent::Saddle { p, q, side } => {
            let ss = saddle_construction(d, &SaddleSite { p, q, side })?;
            let h1 = Host::new(&ss.l1, theory)?;
            let f = saddle_map(host, &h1, &ss)?;
            (Some(h1), f)
        }
        MovieEvent::Dot { arc } => (None, dot_map(host, arc)?),
        MovieEvent::R1 { direction, arc, sign, side, crossing } => match direction {
            Direction::Do => {
                let site = kink(d, need(arc, "arc")?, sign, side)?;
                let h1 = Host::new(&site.big, theory)?;
                let f = r1_map(host, &h1, &site, Direction::Do)?;
                (Some(h1), f)
            }
            Direction::Undo => {
                let site = kink_removal(d, need(crossing, "crossing")?)?;
                let h1 = Host::new(&site.small, theory)?;
                let f = r1_map(&h1, host, &site, Direction::Undo)?;
                (Some(h1), f)
            }
        },
        MovieEvent::R2 { direction, over, under, side, over_along, under_along, crossings, face } => match direction {
            Direction::Do => {
                let site = R2Site { over: need(over, "over")?, under: need(under, "under")?, side, over_along, under_along };
                let cfg = r2_insert(d, &site)?;
                let h1 = Host::new(&cfg.big, theory)?;
                let f = r2_map(host, &h1, &cfg, Direction::Do)?;
                (Some(h1), f)
            }
            Direction::Undo => {
                let [i, j] = need(crossings, "crossings")?;
                let cfg = r2_removal_at(d, i, j, face.map(|[o, u]| (o, u)))?;
                let h1 = Host::new(&cfg.small, theory)?;
                let f = r2_map(&h1, host, &cfg, Direction::Undo)?;
                (Some(h1), f)
            }
        },
    })
}

/// Composes the event maps left to right. Failures carry the event index.
pub fn evaluate_movie(script: &MovieScript, theory: Theory) -> Result<MovieResult> {
    let d0 = script.initial.to_diagram()?;
    let mut host = Host::new(&d0, theory)?;
    let mut map = ChainMap::identity(host.complex.clone());
    let mut frames = vec![d0];
    for (index, ev) in script.events.iter().enumerate() {
        let wrap = |e: Error| Error::Event { index, source: Box::new(e) };
        let (next, f) = apply(&host, ev).map_err(wrap)?;
        map = map.then(&f).map_err(wrap)?;
        if let Some(h) = next {
            host = h;
        }
        frames.push(host.diagram.clone());
    }
    Ok(MovieResult { frames, map })
}

/// An integer combination of dotted movies that share their undotted events.
pub fn evaluate_combination(terms: &[(i64, MovieScript)], theory: Theory) -> Result<ChainMap> {
    let (_, first) = terms.first().ok_or_else(|| Error::Move("empty combination".into()))?;
    let skeleton = |s: &MovieScript| -> Vec<MovieEvent> { s.events.iter().filter(|e| !e.is_dot()).cloned().collect() };
    let base = skeleton(first);
    let mut acc: Option<ChainMap> = None;
    for (c, s) in terms {
        if s.initial != first.initial || skeleton(s) != base {
            return Err(Error::Move("dotted movies in a combination must share their undotted events".into()));
        }
        let m = evaluate_movie(s, theory)?.map.scale(*c);
        acc = Some(match acc {
            None => m,
            Some(a) => a.add(&m)?,
        });
    }
    Ok(acc.unwrap())
}
