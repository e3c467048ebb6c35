//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::time::Instant;

use oddkh::fixtures::trefoil;
use oddkh::verify::{self, Check};

struct Line {
    pass: bool,
    text: String,
}

fn all(checks: &[Check]) -> (bool, String) {
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        (true, format!("{} checks", checks.len()))
    } else {
        (false, format!("{} of {} failed: {}", failed.len(), checks.len(), failed.join("; ")))
    }
}

fn criterion(n: usize, title: &str, limit: Option<f64>, f: impl FnOnce() -> (bool, String)) -> Line {
    let t = Instant::now();
    let (mut pass, mut detail) = f();
    let secs = t.elapsed().as_secs_f64();
    if let Some(limit) = limit {
        if secs >= limit {
            pass = false;
            detail.push_str(&format!(", over the {limit}s limit"));
        }
    }
    let mark = if pass { "PASS" } else { "FAIL" };
    Line { pass, text: format!("{mark} [{n:>2}] {title}: {detail} ({secs:.2}s)") }
}

fn main() {
    let mut lines = Vec::new();
    lines.push(criterion(1, "d^2 = 0 on all fixtures up to 8 crossings, X and Y", Some(300.0), || {
        all(&verify::d_squared(8))
    }));
    lines.push(criterion(2, "sign assignment counts 2, 8, 128", Some(1.0), || all(&verify::sign_counts())));
    lines.push(criterion(3, "homology independent of sign assignment and orientation", None, || {
        all(&verify::sign_independence(&["3_1", "4_1", "hopf+", "5_2"], 5, 2024))
    }));
    lines.push(criterion(4, "type X homology equals type Y up to 7 crossings", None, || all(&verify::x_equals_y(7))));
    lines.push(criterion(5, "Reidemeister pairs have equal homology", Some(120.0), || {
        let checks = verify::reidemeister_invariance();
        let has = |p: &str| checks.iter().any(|c| c.name.contains(p));
        let covered = has("R1 sign +1") && has("R1 sign -1") && has("R2 Left") && has("R2 Right") && has("R3");
        let (ok, detail) = all(&checks);
        (ok && covered && checks.len() >= 6, format!("{detail}, moves covered: {covered}"))
    }));
    lines.push(criterion(6, "oracles agree up to 7 crossings", None, || all(&verify::oracle_checks(7))));
    lines.push(criterion(7, "cobordism maps are chain maps; R1/R2 retractions with witnesses", None, || {
        let mut c = verify::elementary_maps();
        c.extend(verify::retractions());
        all(&c)
    }));
    lines.push(criterion(8, "movie moves 11 and 12", None, || {
        let c = verify::movie_moves();
        let (ok, detail) = all(&c);
        let mm12: Vec<String> = c.iter().filter(|c| c.name.starts_with("MM12")).map(|c| format!("{}: {}", c.name, c.detail)).collect();
        (ok, format!("{detail}; {}", mm12.join("; ")))
    }));
    lines.push(criterion(9, "chronology signs", None, || all(&verify::chronology())));
    lines.push(criterion(10, "dots: square zero, anticommute, coloring relations, over-slide", None, || all(&verify::dots())));
    lines.push(criterion(11, "Hecke quadratic relation on the unknot 2-cable", None, || {
        let c = verify::hecke();
        (c.pass, c.detail)
    }));
    lines.push(criterion(12, "performance", None, || {
        let mut notes = Vec::new();
        let mut ok = true;
        let mut gate = |what: &str, r: oddkh::Result<f64>, limit: f64| match r {
            Ok(s) => {
                ok &= s < limit;
                notes.push(format!("{what} {s:.2}s (limit {limit}s)"));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("{what} failed: {e}"));
            }
        };
        gate("trefoil homology", verify::timed_homology(&trefoil()).map(|x| x.1), 1.0);
        gate("8_19 homology", verify::eight_crossing().and_then(|d| verify::timed_homology(&d)).map(|x| x.1), 60.0);
        let cable = verify::trefoil_cable();
        let crossings = cable.as_ref().map(|d| d.n_crossings()).unwrap_or(0);
        gate(
            &format!("{crossings}-crossing trefoil 2-cable d^2 = 0"),
            cable.and_then(|d| verify::timed_d_squared(&d)).map(|x| x.1),
            600.0,
        );
        (ok && crossings == 12, notes.join(", "))
    }));
    let mut failed = 0;
    for l in &lines {
        println!("{}", l.text);
        failed += usize::from(!l.pass);
    }
    println!("acceptance: {} criteria, {failed} failed", lines.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
