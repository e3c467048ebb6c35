//! Verification suites. Each check is named, runs independently and never
//! panics; errors become failed checks with the error as detail.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cobfunctor::{
    birth_diagram, birth_map, coloring_relations, death_diagram, death_map, death_pair, death_saddle_pair, dot_map,
    dot_slide, hecke_swap, movie_move_11, movie_move_12, r1_map, r2_map, relation_map, saddle_diagram, saddle_map,
    saddle_square, Direction, Host,
};
use crate::complex::{assemble_complex, homotopic_up_to_sign, odd_complex, BigradedHomology, ChainMap};
use crate::cube::{enumerate_sign_assignments, Arrows, ResolutionCube, Theory};
use crate::error::{Error, Result};
use crate::fixtures::{corpus, hopf, knot, reidemeister_pairs, trefoil};
use crate::linkdiag::{cable, kink, r2_insert, LinkDiagram, R2Site, SaddleSite, Side};
use crate::oracles::{brute_force_homology, even_khovanov_mod2, kauffman_bracket};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }

    /// Runs `f`, turning an error into a failed check.
    pub fn run(name: impl Into<String>, f: impl FnOnce() -> Result<(bool, String)>) -> Self {
        match f() {
            Ok((pass, detail)) => Check::new(name, pass, detail),
            Err(e) => Check::new(name, false, format!("error: {e}")),
        }
    }
}

/// What a command did: the command line, one verdict per check, timing and
/// any output the command produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub checks: Vec<Check>,
    pub seconds: f64,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub output: serde_json::Value,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Signs,
    Invariance,
    Functoriality,
    Dots,
    Hecke,
    Oracles,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Signs, Suite::Invariance, Suite::Functoriality, Suite::Dots, Suite::Hecke, Suite::Oracles];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Signs => "signs",
            Suite::Invariance => "invariance",
            Suite::Functoriality => "functoriality",
            Suite::Dots => "dots",
            Suite::Hecke => "hecke",
            Suite::Oracles => "oracles",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Move(format!("unknown suite `{s}`; expected one of signs, invariance, functoriality, dots, hecke, oracles")))
    }
}

pub fn run_suite(suite: Suite, max_crossings: usize) -> Vec<Check> {
    let small = max_crossings.min(7);
    match suite {
        Suite::Signs => {
            let mut out = sign_counts();
            out.extend(d_squared(max_crossings.min(8)));
            out.extend(sign_independence(&["3_1", "4_1", "hopf+"], 5, 7));
            out
        }
        Suite::Invariance => {
            let mut out = x_equals_y(small);
            out.extend(reidemeister_invariance());
            out
        }
        Suite::Functoriality => {
            let mut out = elementary_maps();
            out.extend(retractions());
            out.extend(movie_moves());
            out.extend(chronology());
            out
        }
        Suite::Dots => dots(),
        Suite::Hecke => vec![hecke()],
        Suite::Oracles => oracle_checks(small),
    }
}

fn both() -> [Theory; 2] {
    [Theory::X, Theory::Y]
}

fn diagram(name: &str) -> Result<LinkDiagram> {
    corpus(usize::MAX)?
        .into_iter()
        .find(|f| f.name == name)
        .map(|f| f.diagram)
        .ok_or_else(|| Error::Move(format!("no fixture named {name}")))
}

// ---------------------------------------------------------------- signs

/// Exhaustive counts of valid sign assignments on 1-, 2- and 3-crossing cubes.
pub fn sign_counts() -> Vec<Check> {
    let mut out = Vec::new();
    for (name, want) in [("kink+", 2usize), ("hopf+", 8), ("3_1", 128)] {
        for th in both() {
            out.push(Check::run(format!("sign count {name} {th:?}"), || {
                let cube = ResolutionCube::of(&diagram(name)?, Arrows::default())?;
                let got = enumerate_sign_assignments(&cube, th)?.len();
                Ok((got == want, format!("{got} valid, expected {want}")))
            }));
        }
    }
    out
}

/// d² = 0 for every fixture up to `max` crossings in both theories.
pub fn d_squared(max: usize) -> Vec<Check> {
    let fixtures = corpus(max).unwrap_or_default();
    fixtures
        .par_iter()
        .flat_map_iter(|f| {
            both().into_iter().map(move |th| {
                Check::run(format!("d^2 = 0 {} {th:?}", f.name), || {
                    let c = odd_complex(&f.diagram, th)?;
                    c.check_d_squared()?;
                    Ok((true, format!("total rank {}", c.total_rank())))
                })
            })
        })
        .collect()
}

/// Homology under `k` random valid sign assignments and `k` random arrow
/// choices matches the canonical one.
pub fn sign_independence(names: &[&str], k: usize, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for &name in names {
        let etas: Vec<u64> = (0..k).map(|_| rng.gen()).collect();
        let arrows: Vec<u64> = (0..k).map(|_| rng.gen()).collect();
        out.push(Check::run(format!("random sign assignments {name}"), || {
            let d = diagram(name)?;
            let cube = ResolutionCube::of(&d, Arrows::default())?;
            let base = cube.solve_sign_assignment(Theory::Y)?;
            let want = assemble_complex(&d, &cube, &base)?.homology();
            let n = d.n_crossings();
            for &seed in &etas {
                let mut r = ChaCha8Rng::seed_from_u64(seed);
                let eta: Vec<bool> = (0..1usize << n).map(|_| r.gen()).collect();
                let s = base.add_coboundary(&cube, &eta);
                s.validate(&cube)?;
                if assemble_complex(&d, &cube, &s)?.homology() != want {
                    return Ok((false, format!("homology changed for eta seed {seed}")));
                }
            }
            Ok((true, format!("{k} assignments")))
        }));
        out.push(Check::run(format!("random orientations {name}"), || {
            let d = diagram(name)?;
            let want = odd_complex(&d, Theory::Y)?.homology();
            let mask = (1u64 << d.n_crossings()) - 1;
            for &bits in &arrows {
                let cube = ResolutionCube::of(&d, Arrows(bits & mask))?;
                let s = cube.solve_sign_assignment(Theory::Y)?;
                if assemble_complex(&d, &cube, &s)?.homology() != want {
                    return Ok((false, format!("homology changed for arrows {:#b}", bits & mask)));
                }
            }
            Ok((true, format!("{k} orientations")))
        }));
    }
    out
}

// ---------------------------------------------------------------- invariance

pub fn x_equals_y(max: usize) -> Vec<Check> {
    let fixtures = corpus(max).unwrap_or_default();
    fixtures
        .par_iter()
        .map(|f| {
            Check::run(format!("X = Y {}", f.name), || {
                let x = odd_complex(&f.diagram, Theory::X)?.homology();
                let y = odd_complex(&f.diagram, Theory::Y)?.homology();
                Ok((x == y, format!("total rank {}", y.total_rank())))
            })
        })
        .collect()
}

pub fn reidemeister_invariance() -> Vec<Check> {
    let pairs = match reidemeister_pairs() {
        Ok(p) => p,
        Err(e) => return vec![Check::new("Reidemeister pairs", false, format!("error: {e}"))],
    };
    pairs
        .par_iter()
        .map(|(name, a, b)| {
            Check::run(name.clone(), || {
                let ha = odd_complex(a, Theory::Y)?.homology();
                let hb = odd_complex(b, Theory::Y)?.homology();
                Ok((ha == hb, format!("{} vs {} crossings", a.n_crossings(), b.n_crossings())))
            })
        })
        .collect()
}

// ---------------------------------------------------------------- oracles

fn nonzero(m: std::collections::BTreeMap<(i32, i32), usize>) -> std::collections::BTreeMap<(i32, i32), usize> {
    m.into_iter().filter(|(_, v)| *v > 0).collect()
}

pub fn oracle_checks(max: usize) -> Vec<Check> {
    let fixtures = corpus(max).unwrap_or_default();
    fixtures
        .par_iter()
        .flat_map_iter(|f| {
            let d = &f.diagram;
            let c = odd_complex(d, Theory::Y);
            let euler = Check::run(format!("Euler = Kauffman {}", f.name), || {
                let c = c.as_ref().map_err(|e| Error::Invariant(e.to_string()))?;
                Ok((c.graded_euler_characteristic() == kauffman_bracket(d), String::new()))
            });
            let mod2 = Check::run(format!("mod 2 = even mod 2 {}", f.name), || {
                let c = c.as_ref().map_err(|e| Error::Invariant(e.to_string()))?;
                Ok((nonzero(c.reduce_coefficients(2)?) == nonzero(even_khovanov_mod2(d)), String::new()))
            });
            let mut out = vec![euler, mod2];
            if let Ok(c) = &c {
                if c.total_rank() <= 64 {
                    out.push(Check::run(format!("SNF = brute force {}", f.name), || {
                        Ok((c.homology() == brute_force_homology(c)?, format!("total rank {}", c.total_rank())))
                    }));
                }
            }
            out
        })
        .collect()
}

// ---------------------------------------------------------------- functoriality

fn chain(name: String, f: impl FnOnce() -> Result<ChainMap>) -> Check {
    Check::run(name, || {
        let m = f()?;
        Ok((m.is_chain_map() && !m.is_zero(), String::new()))
    })
}

fn hosts() -> Vec<(&'static str, LinkDiagram)> {
    vec![("unknot", LinkDiagram::unlink(1)), ("3_1", trefoil()), ("hopf+", hopf())]
}

/// First saddle site on `d` that merges two components, or splits one.
fn saddle_site(d: &LinkDiagram, merge: bool) -> Option<SaddleSite> {
    let arcs = d.arcs().to_vec();
    for &p in &arcs {
        for &q in &arcs {
            for side in [Side::Left, Side::Right] {
                let site = SaddleSite { p, q, side };
                if let Ok(ss) = saddle_diagram(d, &site) {
                    let fewer = ss.l1.n_components() < d.n_components();
                    if fewer == merge && ss.l1.n_components() != d.n_components() {
                        return Some(site);
                    }
                }
            }
        }
    }
    None
}

/// Every elementary map is a nonzero chain map on three hosts.
pub fn elementary_maps() -> Vec<Check> {
    let th = Theory::Y;
    let mut out = Vec::new();
    for (name, d) in hosts() {
        let (d1, a) = match birth_diagram(&d) {
            Ok(x) => x,
            Err(e) => {
                out.push(Check::new(format!("birth {name}"), false, e.to_string()));
                continue;
            }
        };
        out.push(chain(format!("birth on {name}"), || birth_map(&Host::new(&d, th)?, &Host::new(&d1, th)?, a)));
        out.push(chain(format!("death on {name}"), || {
            death_map(&Host::new(&d1, th)?, &Host::new(&death_diagram(&d1, a)?, th)?, a)
        }));
        out.push(chain(format!("dot on {name}"), || dot_map(&Host::new(&d, th)?, d.arcs()[0])));
        // merging the extra circle in, and splitting one off
        for (kind, host, merge) in [("merge", &d1, true), ("split", &d, false)] {
            out.push(chain(format!("saddle {kind} on {name}"), || {
                let site = saddle_site(host, merge).ok_or_else(|| Error::Move(format!("no {kind} site")))?;
                let ss = saddle_diagram(host, &site)?;
                saddle_map(&Host::new(host, th)?, &Host::new(&ss.l1, th)?, &ss)
            }));
        }
        for sign in [1i8, -1] {
            for dir in [Direction::Do, Direction::Undo] {
                out.push(chain(format!("R1 {sign:+} {dir:?} on {name}"), || {
                    let site = kink(&d, d.arcs()[0], sign, Side::Left)?;
                    r1_map(&Host::new(&d, th)?, &Host::new(&site.big, th)?, &site, dir)
                }));
            }
        }
    }
    for (name, d, site) in r2_hosts() {
        for dir in [Direction::Do, Direction::Undo] {
            out.push(chain(format!("R2 {dir:?} {name}"), || {
                let cfg = r2_insert(&d, &site)?;
                r2_map(&Host::new(&d, th)?, &Host::new(&cfg.big, th)?, &cfg, dir)
            }));
        }
    }
    out
}

/// R2 sites on three hosts, with both choices of which strand goes over.
fn r2_hosts() -> Vec<(String, LinkDiagram, R2Site)> {
    let mut out = Vec::new();
    let u2 = LinkDiagram::unlink(2);
    out.push(("unlink2 1 over 2".to_string(), u2.clone(), R2Site::new(1, 2, Side::Left)));
    out.push(("unlink2 2 over 1".to_string(), u2, R2Site::new(2, 1, Side::Left)));
    for (name, d) in [("hopf+", hopf()), ("3_1", trefoil())] {
        let mut seen = 0;
        'outer: for &o in d.arcs() {
            for &u in d.arcs() {
                for side in [Side::Left, Side::Right] {
                    let site = R2Site::new(o, u, side);
                    if o != u && r2_insert(&d, &site).is_ok() {
                        out.push((format!("{name} {o} over {u} {side:?}"), d.clone(), site));
                        seen += 1;
                        if seen == 2 {
                            break 'outer;
                        }
                        break;
                    }
                }
            }
        }
    }
    out
}

fn retraction(name: String, small: &LinkDiagram, big: &LinkDiagram, up: impl Fn(&Host, &Host) -> Result<(ChainMap, ChainMap)>) -> Check {
    Check::run(name, || {
        let (s, b) = (Host::new(small, Theory::Y)?, Host::new(big, Theory::Y)?);
        let (f, g) = up(&s, &b)?;
        let mut detail = Vec::new();
        for (what, comp, id) in [
            ("undo.do", f.then(&g)?, ChainMap::identity(s.complex.clone())),
            ("do.undo", g.then(&f)?, ChainMap::identity(b.complex.clone())),
        ] {
            match homotopic_up_to_sign(&comp, &id)? {
                Some(w) if w.witnesses(&comp, &id) => detail.push(format!("{what} ~ {:+}id", w.sign)),
                _ => return Ok((false, format!("{what} is not homotopic to +-id"))),
            }
        }
        Ok((true, detail.join(", ")))
    })
}

/// Do and undo compose to maps homotopic to ±id, witnesses checked exactly.
pub fn retractions() -> Vec<Check> {
    let mut out = Vec::new();
    for (name, d) in [("unknot", LinkDiagram::unlink(1)), ("3_1", trefoil())] {
        for sign in [1i8, -1] {
            for side in [Side::Left, Side::Right] {
                let Ok(site) = kink(&d, d.arcs()[0], sign, side) else { continue };
                out.push(retraction(format!("R1 {sign:+} {side:?} retraction on {name}"), &d, &site.big, |s, b| {
                    Ok((r1_map(s, b, &site, Direction::Do)?, r1_map(s, b, &site, Direction::Undo)?))
                }));
            }
        }
    }
    for (name, d, site) in r2_hosts() {
        let Ok(cfg) = r2_insert(&d, &site) else { continue };
        out.push(retraction(format!("R2 retraction {name}"), &d, &cfg.big, |s, b| {
            Ok((r2_map(s, b, &cfg, Direction::Do)?, r2_map(s, b, &cfg, Direction::Undo)?))
        }));
    }
    out
}

pub fn movie_moves() -> Vec<Check> {
    let mut out = Vec::new();
    for (name, d) in hosts() {
        out.push(Check::run(format!("MM11 on {name}"), || {
            let c = movie_move_11(&d, d.arcs()[0], Theory::Y)?;
            Ok((c.sign.is_some(), format!("sign {:?}", c.sign)))
        }));
    }
    out.push(Check::run("MM12 forward, positive kink", || {
        let c = movie_move_12(&LinkDiagram::unlink(1), 1, Theory::Y)?;
        Ok((c.sign == Some(-1), format!("left = {:?} right", c.sign)))
    }));
    out.push(Check::run("MM12 forward, negative kink", || {
        let c = movie_move_12(&LinkDiagram::unlink(1), -1, Theory::Y)?;
        let note = "each side is normalized separately, so only agreement up to sign is meaningful";
        Ok((c.sign.is_some(), format!("left = {:?} right; {note}", c.sign)))
    }));
    out
}

pub fn chronology() -> Vec<Check> {
    let th = Theory::Y;
    let l = |p, q| SaddleSite { p, q, side: Side::Left };
    let mut out = Vec::new();
    let verdict = |c: crate::cobfunctor::ChronologyPair| (c.holds(), format!("sign {:?}, expected {}", c.sign, c.expected));
    for (name, d, a, b) in [("unlink3", LinkDiagram::unlink(3), 1, 2), ("unlink4", LinkDiagram::unlink(4), 2, 4)] {
        out.push(Check::run(format!("deaths anticommute {name}"), || Ok(verdict(death_pair(&d, a, b, th)?))));
    }
    let t2 = || birth_diagram(&trefoil()).and_then(|(t, a)| birth_diagram(&t).map(|(t, b)| (t, a, b)));
    out.push(Check::run("disjoint saddles anticommute unlink4", || {
        Ok(verdict(saddle_square(&LinkDiagram::unlink(4), &l(1, 2), &l(3, 4), th)?))
    }));
    out.push(Check::run("disjoint saddles anticommute unlink3", || {
        Ok(verdict(saddle_square(&LinkDiagram::unlink(3), &l(1, 1), &l(2, 3), th)?))
    }));
    out.push(Check::run("disjoint saddles anticommute 3_1 + 2 circles", || {
        let (t, a, b) = t2()?;
        Ok(verdict(saddle_square(&t, &l(1, 1), &l(a, b), th)?))
    }));
    out.push(Check::run("death vs merging saddle unlink3", || Ok(verdict(death_saddle_pair(&LinkDiagram::unlink(3), &l(1, 2), 3, th)?))));
    out.push(Check::run("death vs merging saddle 3_1 + 2 circles", || {
        let (t, a, b) = t2()?;
        Ok(verdict(death_saddle_pair(&t, &l(1, a), b, th)?))
    }));
    out.push(Check::run("death vs splitting saddle unlink2", || Ok(verdict(death_saddle_pair(&LinkDiagram::unlink(2), &l(1, 1), 2, th)?))));
    out.push(Check::run("death vs splitting saddle 3_1 + circle", || {
        let (t, a) = birth_diagram(&trefoil())?;
        Ok(verdict(death_saddle_pair(&t, &l(1, 1), a, th)?))
    }));
    out
}

// ---------------------------------------------------------------- dots

pub fn dots() -> Vec<Check> {
    let th = Theory::Y;
    let mut out = Vec::new();
    for (name, d) in hosts() {
        out.push(Check::run(format!("dot squared is zero on {name}"), || {
            let f = dot_map(&Host::new(&d, th)?, d.arcs()[0])?;
            Ok((f.then(&f)?.is_zero() && !f.is_zero(), String::new()))
        }));
    }
    for (name, d) in [("hopf+", hopf()), ("3_1", trefoil())] {
        out.push(Check::run(format!("distinct dots anticommute on {name}"), || {
            let h = Host::new(&d, th)?;
            let (a, b) = (dot_map(&h, d.arcs()[0])?, dot_map(&h, *d.arcs().last().unwrap())?);
            let (ab, ba) = (a.then(&b)?, b.then(&a)?);
            Ok((!ab.is_zero() && ab.equal_up_to_sign(&ba) == Some(-1), String::new()))
        }));
    }
    let t = trefoil();
    match Host::new(&t, th) {
        Ok(h) => {
            for rel in coloring_relations(&t) {
                let terms: Vec<String> = rel.terms.iter().map(|(w, a)| format!("{w:+}e{a}")).collect();
                out.push(Check::run(format!("3_1 crossing {}: {} is zero on homology", rel.crossing, terms.join(" ")), || {
                    Ok((relation_map(&h, &rel)?.induces_zero()?, String::new()))
                }));
            }
        }
        Err(e) => out.push(Check::new("trefoil host", false, e.to_string())),
    }
    for k in [0, 1] {
        out.push(Check::run(format!("dot slides over crossing {k} of 3_1"), || {
            let (a, b, w) = dot_slide(&t, k, th)?;
            Ok(match w {
                Some(w) if w.witnesses(&a, &b) => (true, format!("homotopic with sign {:+}", w.sign)),
                _ => (false, "not homotopic up to sign".into()),
            })
        }));
    }
    out
}

// ---------------------------------------------------------------- hecke

pub fn hecke() -> Check {
    Check::run("strand swap satisfies g^2 + 2g + 1 ~ 0 on the unknot 2-cable", || {
        let hk = hecke_swap(Theory::Y)?;
        let which = match hk.sign {
            Some(1) => "g",
            Some(_) => "-g",
            None => "neither sign",
        };
        Ok((hk.sign.is_some(), format!("holds for {which}")))
    })
}

// ---------------------------------------------------------------- performance

/// Homology of a fixture, with elapsed seconds.
pub fn timed_homology(d: &LinkDiagram) -> Result<(BigradedHomology, f64)> {
    let t = Instant::now();
    let h = odd_complex(d, Theory::Y)?.homology();
    Ok((h, t.elapsed().as_secs_f64()))
}

/// The blackboard 2-cable of the trefoil: twelve crossings.
pub fn trefoil_cable() -> Result<LinkDiagram> {
    let t = trefoil();
    cable(&t, 2, t.writhe())
}

/// Builds the complex of `d` and checks d² = 0, with elapsed seconds.
pub fn timed_d_squared(d: &LinkDiagram) -> Result<(usize, f64)> {
    let t = Instant::now();
    let c = odd_complex(d, Theory::Y)?;
    c.check_d_squared()?;
    Ok((c.total_rank(), t.elapsed().as_secs_f64()))
}

pub fn eight_crossing() -> Result<LinkDiagram> {
    knot("8_19").ok_or_else(|| Error::Move("missing 8_19".into()))
}
