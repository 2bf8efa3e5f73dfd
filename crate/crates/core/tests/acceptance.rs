//! Acceptance criteria, one `PASS`/`FAIL` line each. Runs without the test
//! harness so the lines come out in order; exits non-zero on any failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use horton_islands::constructions::{separation_checks, MAX_HORTON_LEVEL};
use horton_islands::islands::max_visible_island_with;
use horton_islands::oracle::{
    all_islands, is_island_direct, is_visible_island_direct, lemma7_brute,
    max_visible_island_exhaustive, visibility_matrix_brute, visible_island_of_size,
};
use horton_islands::{
    blowup_soundness_check, blowup_triplets, find_k_hole, horton_generate, is_island,
    island_closure, max_collinear, max_visible_island, verify_lemma7, HortonSet, Outcome,
    SearchLimits, VisibilityGraph,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{random_set, random_subset, run_in_pool};

const BLOWUP_H4_BUDGET: u64 = 50_000_000;

struct Line {
    id: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
}

fn criterion(id: &'static str, f: impl FnOnce() -> (bool, String)) -> Line {
    let t = Instant::now();
    let (pass, detail) = f();
    let line = Line {
        id,
        pass,
        detail,
        elapsed: t.elapsed(),
    };
    println!(
        "{} {:<4} {} [{:.2}s]",
        if line.pass { "PASS" } else { "FAIL" },
        line.id,
        line.detail,
        line.elapsed.as_secs_f64()
    );
    line
}

fn within(limit: Duration, (pass, detail): (bool, String), elapsed: Duration) -> (bool, String) {
    if elapsed > limit {
        (false, format!("{detail}; exceeded {}s", limit.as_secs()))
    } else {
        (pass, detail)
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> (bool, String)) -> (bool, String) {
    let t = Instant::now();
    let r = f();
    within(limit, r, t.elapsed())
}

fn horton(n: usize) -> HortonSet {
    horton_generate(n).expect("level in range")
}

fn c1_horton_no_three_collinear() -> (bool, String) {
    timed(Duration::from_secs(10), || {
        let values: Vec<usize> = (1..=6)
            .map(|n| max_collinear(horton(n).points()).0)
            .collect();
        (
            values.iter().all(|&m| m == 2),
            format!("max_collinear(H_n) for n=1..6: {values:?}"),
        )
    })
}

fn c2_separation() -> (bool, String) {
    timed(Duration::from_secs(10), || {
        let mut total = 0;
        let mut ok = true;
        for n in 0..=6 {
            let h = horton(n);
            let splits = separation_checks(h.points().points()).expect("Horton layout");
            total += splits.len();
            ok &= splits.iter().all(|s| s.passed) && h.verify_separation();
        }
        (ok, format!("{total} recursion splits separated for n=0..6"))
    })
}

fn c3_lemma7() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [3, 4, 5] {
        let h = horton(n);
        // Single worker, as the criterion is stated.
        let rep = run_in_pool(1, || verify_lemma7(h.points()));
        ok &= rep.outcome == Outcome::Complete && rep.witness.is_empty();
        let expected = horton_islands::combinations::binomial(h.len(), 7);
        ok &= rep.value == expected;
        if n <= 4 {
            ok &= lemma7_brute(h.points()).is_none();
        }
        parts.push(format!("n={n}: {} subsets", rep.value));
    }
    (
        ok,
        format!("{} (brute-force agrees for n=3,4)", parts.join(", ")),
    )
}

fn c4_no_seven_hole() -> (bool, String) {
    let h = horton(5);
    let rep = run_in_pool(1, || find_k_hole(h.points(), 7, SearchLimits::default()));
    let six = find_k_hole(h.points(), 6, SearchLimits::default());
    (
        rep.outcome == Outcome::Complete && rep.witness.is_empty() && six.reverify(h.points()),
        format!(
            "H_5: no 7-hole ({} nodes); a 6-hole exists, e.g. {:?}",
            rep.nodes_explored, six.witness
        ),
    )
}

fn c5_theorem_at_desk_scale() -> (bool, String) {
    let t = Instant::now();
    let b3 = blowup_triplets(&horton(3)).expect("blowup of H_3");
    let set = b3.blown.clone();
    let collinear = max_collinear(&set).0;
    let oracle = visible_island_of_size(&set, 13);
    let search = max_visible_island(&set, SearchLimits::with_cutoff(13));
    let small_ok = collinear == 3
        && oracle.is_none()
        && search.outcome == Outcome::Complete
        && search.value < 13
        && search.reverify(&set);
    let (small_ok, small) = within(
        Duration::from_secs(300),
        (
            small_ok,
            format!(
                "blowup(H_3): max_collinear={collinear}, oracle 13-subsets: none, search max={}",
                search.value
            ),
        ),
        t.elapsed(),
    );

    let b4 = blowup_triplets(&horton(4)).expect("blowup of H_4");
    let vis = VisibilityGraph::new(&b4.blown);
    let limits = SearchLimits {
        cutoff: Some(13),
        budget_nodes: Some(BLOWUP_H4_BUDGET),
    };
    let r4 = max_visible_island_with(&b4.blown, &vis, limits);
    let c4 = max_collinear(&b4.blown).0;
    let (large_ok, verdict) = match r4.outcome {
        Outcome::Complete if r4.value < 13 => (true, format!("certified none, max={}", r4.value)),
        Outcome::BudgetExceeded => (true, "inconclusive (budget)".to_string()),
        _ => (false, format!("found island of size {}", r4.value)),
    };
    (
        small_ok && large_ok && c4 == 3 && r4.reverify(&b4.blown),
        format!(
            "{small}; blowup(H_4): max_collinear={c4}, {verdict}, {} nodes",
            r4.nodes_explored
        ),
    )
}

fn c6_soundness() -> (bool, String) {
    let records: Vec<_> = [3, 4]
        .iter()
        .map(|&n| blowup_triplets(&horton(n)).expect("blowup"))
        .collect();
    timed(Duration::from_secs(120), || {
        let ok = records.iter().all(|r| blowup_soundness_check(r, 7));
        let scales: Vec<String> = records.iter().map(|r| r.scale.to_string()).collect();
        (
            ok,
            format!("n=3,4 certified at scales {}", scales.join(",")),
        )
    })
}

fn c7_oracle_equivalence() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x15_1a_2d);

    let mut vis_ok = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=64);
        let grid = rng.gen_range(3..=40);
        let set = random_set(&mut rng, n, grid);
        let fast = VisibilityGraph::new(&set);
        let brute = visibility_matrix_brute(&set);
        let agree =
            (0..set.len()).all(|i| (0..set.len()).all(|j| fast.adjacent(i, j) == brute[i][j]));
        vis_ok += agree as usize;
    }

    let mut mvi_ok = 0;
    for _ in 0..50 {
        let n = rng.gen_range(1..=18);
        let grid = rng.gen_range(3..=12);
        let set = random_set(&mut rng, n, grid);
        let (best, _) = max_visible_island_exhaustive(&set);
        let rep = max_visible_island(&set, SearchLimits::default());
        let agree = rep.value as usize == best
            && rep.outcome == Outcome::Complete
            && is_visible_island_direct(&set, &rep.witness);
        mvi_ok += agree as usize;
    }

    let mut closure_ok = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=12);
        let grid = rng.gen_range(3..=8);
        let set = random_set(&mut rng, n, grid);
        let n = set.len();
        let s = random_subset(&mut rng, n, 0.3);
        let extra = random_subset(&mut rng, n, 0.2);
        let mut t: Vec<usize> = s.iter().chain(&extra).copied().collect();
        t.sort_unstable();
        t.dedup();
        let cs = island_closure(&set, &s);
        let ct = island_closure(&set, &t);
        let contains = s.iter().all(|i| cs.binary_search(i).is_ok());
        let idempotent = island_closure(&set, &cs) == cs;
        let monotone = cs.iter().all(|i| ct.binary_search(i).is_ok());
        let is_isl = is_island_direct(&set, &cs) && is_island(&set, &cs);
        let agrees = is_island(&set, &s) == is_island_direct(&set, &s);
        let minimal = all_islands(&set)
            .iter()
            .filter(|isl| s.iter().all(|i| isl.binary_search(i).is_ok()))
            .all(|isl| cs.iter().all(|i| isl.binary_search(i).is_ok()));
        closure_ok += (contains && idempotent && monotone && is_isl && agrees && minimal) as usize;
    }

    (
        vis_ok == 200 && mvi_ok == 50 && closure_ok == 500,
        format!(
            "visibility {vis_ok}/200, max visible island {mvi_ok}/50, closure {closure_ok}/500"
        ),
    )
}

fn c8_scale() -> (bool, String) {
    let mut ok = true;
    for n in 0..=4 {
        let h = horton(n);
        ok &= HortonSet::from_points(h.points().points().to_vec()).as_ref() == Ok(&h);
        let rec = blowup_triplets(&h).expect("blowup");
        ok &= rec.check_structure() && rec.soundness_certified;
        ok &= max_collinear(&rec.blown).0 == 3.min(rec.blown.len());
    }
    ok &= horton_generate(MAX_HORTON_LEVEL + 1).is_err();
    (
        ok,
        "finite constructions checked exhaustively for n <= 4; larger n covered by invariants only"
            .to_string(),
    )
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let lines = [
        criterion("1", c1_horton_no_three_collinear),
        criterion("2", c2_separation),
        criterion("3", c3_lemma7),
        criterion("4", c4_no_seven_hole),
        criterion("5", c5_theorem_at_desk_scale),
        criterion("6", c6_soundness),
        criterion("7", c7_oracle_equivalence),
        criterion("8", c8_scale),
    ];
    let failed = lines.iter().filter(|l| !l.pass).count();
    println!(
        "acceptance: {}/{} criteria passed",
        lines.len() - failed,
        lines.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
