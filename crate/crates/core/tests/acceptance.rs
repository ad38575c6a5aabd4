//! Acceptance suite. Each criterion prints one PASS or FAIL line; the test
//! fails if any criterion fails.

use std::collections::{BTreeMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cubenets::chords::{diagram_from_cycle, edge_orbit_count, enumerate_diagrams, maxnet_profiles};
use cubenets::develop::{develop_path, develop_tree, develop_tree_shuffled, uturn_audit, Development};
use cubenets::enumerate::{build_table, enumerate_cycles, enumerate_paths, enumerate_trees, Method};
use cubenets::net::{box_growth_trace, canonical_net, cube_partition_of, is_net};
use cubenets::partition::{enumerate_cube_partitions, realize_partition};
use cubenets::random::random_spanning_tree;
use cubenets::roll::Slot;
use cubenets::symmetry::canonical_form;
use cubenets::{Direction, FacetLabel, RollState, SignedPermutation, SpanningSubgraph, SubgraphKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(id: u32, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let result = result.and_then(|()| {
        ensure(elapsed <= limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
    });
    match &result {
        Ok(()) => println!("PASS criterion {id}: {name} ({elapsed:.2?})"),
        Err(why) => println!("FAIL criterion {id}: {name} ({elapsed:.2?}): {why}"),
    }
    result.is_ok()
}

/// Collision check from scratch: every facet on its own lattice point.
fn distinct_cells(dev: &Development) -> bool {
    let cells: HashSet<_> = dev.placements().into_iter().map(|(_, p)| p.clone()).collect();
    cells.len() == 2 * dev.n()
}

/// Sorted bounding-box extents, computed from the raw placements.
fn extents(dev: &Development) -> Vec<usize> {
    let dim = dev.n() - 1;
    let pts: Vec<_> = dev.placements().into_iter().map(|(_, p)| p.clone()).collect();
    let mut out: Vec<usize> = (0..dim)
        .map(|k| {
            let lo = pts.iter().map(|p| p[k]).min().unwrap();
            let hi = pts.iter().map(|p| p[k]).max().unwrap();
            (hi - lo + 1) as usize
        })
        .collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn check_partition_shape(n: usize, parts: &[usize]) -> Outcome {
    ensure(
        parts.len() == n - 1 && parts.iter().all(|&p| p >= 2) && parts.iter().sum::<usize>() == 3 * n - 2,
        || format!("n={n}: {parts:?} is not a cube partition"),
    )
}

/// Net and partition checks shared by criteria 2 and 3.
fn audit_net(dev: &Development) -> (Outcome, Outcome) {
    let n = dev.n();
    let net = ensure(distinct_cells(dev) && is_net(dev), || {
        format!("collision in development of {}", dev.tree().map(|t| t.to_string()).unwrap_or_default())
    });
    let partition = (|| {
        let parts = extents(dev);
        check_partition_shape(n, &parts)?;
        let reported = cube_partition_of(dev).map_err(|e| e.to_string())?;
        ensure(reported.parts() == parts.as_slice(), || format!("reported {reported}, measured {parts:?}"))?;
        let trace = box_growth_trace(dev);
        ensure(trace.len() == 2 * n && trace[0] == n - 1, || format!("trace {trace:?}"))?;
        ensure(trace.windows(2).all(|w| w[1] == w[0] + 1), || format!("growth trace {trace:?}"))
    })();
    (net, partition)
}

/// Partitions of `total` into exactly `parts` positive parts.
fn partition_count(total: usize, parts: usize) -> usize {
    match (total, parts) {
        (0, 0) => 1,
        (_, 0) => 0,
        (t, k) if t < k => 0,
        (t, k) => partition_count(t - 1, k - 1) + partition_count(t - k, k),
    }
}

fn label(s: &str) -> FacetLabel {
    s.parse().unwrap()
}

fn random_tree(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> SpanningSubgraph {
    let n = rng.gen_range(lo..=hi);
    random_spanning_tree(n, rng)
}

const CASES: usize = 10_000;

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let three = enumerate_trees(3).map_err(|e| e.to_string())?.len();
    let t3 = start.elapsed();
    ensure(three == 11, || format!("n=3 gave {three}"))?;
    ensure(t3 < Duration::from_secs(1), || format!("n=3 took {t3:?}"))?;
    let start = Instant::now();
    let four = enumerate_trees(4).map_err(|e| e.to_string())?.len();
    let t4 = start.elapsed();
    ensure(four == 261, || format!("n=4 gave {four}"))?;
    ensure(t4 < Duration::from_secs(60), || format!("n=4 took {t4:?}"))
}

fn criteria_2_and_3() -> (Outcome, Outcome) {
    let mut net = Ok(());
    let mut partition = Ok(());
    let mut record = |dev: &Development| {
        let (a, b) = audit_net(dev);
        if net.is_ok() {
            net = a;
        }
        if partition.is_ok() {
            partition = b;
        }
    };
    let trees = match enumerate_trees(4) {
        Ok(t) => t,
        Err(e) => return (Err(e.to_string()), Err(e.to_string())),
    };
    if trees.len() != 261 {
        let msg = format!("expected 261 trees at n=4, got {}", trees.len());
        return (Err(msg.clone()), Err(msg));
    }
    for t in &trees {
        record(&develop_tree(t, label("1")).unwrap());
    }
    for n in 5..=8 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + n as u64);
        for _ in 0..CASES {
            let t = random_spanning_tree(n, &mut rng);
            record(&develop_tree(&t, label("1")).unwrap());
        }
    }
    (net, partition)
}

fn criterion_4() -> Outcome {
    for n in 2..=12 {
        let parts = enumerate_cube_partitions(n).map_err(|e| e.to_string())?;
        let expected = partition_count(2 * n - 1, n - 1);
        ensure(parts.len() == expected, || format!("n={n}: {} partitions, expected {expected}", parts.len()))?;
        if n == 4 {
            ensure(parts.len() == 4, || "n=4 must have 4 partitions".into())?;
        }
        for p in parts {
            check_partition_shape(n, p.parts())?;
            let seq = realize_partition(&p).map_err(|e| format!("{p}: {e}"))?;
            ensure(seq.moves.len() == 2 * n - 1, || format!("{p}: word of length {}", seq.moves.len()))?;
            ensure(seq.moves.iter().all(|d| d.is_positive()), || format!("{p}: {}", seq.word()))?;
            let dev = develop_path(n, label("1"), &seq.moves).map_err(|e| format!("{p}: {e}"))?;
            ensure(dev.is_spanning() && distinct_cells(&dev), || format!("{p}: not a net"))?;
            let got = extents(&dev);
            ensure(got == p.parts(), || format!("{p}: word {} gives {got:?}", seq.word()))?;
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let table = build_table(7, Method::Chords).map_err(|e| e.to_string())?;
    let cycles: Vec<usize> = table.rows.values().map(|r| r.cycles).collect();
    let paths: Vec<usize> = table.rows.values().map(|r| r.paths).collect();
    ensure(cycles == [1, 2, 7, 29, 196, 1788], || format!("cycles {cycles:?}"))?;
    ensure(paths == [1, 4, 24, 184, 1911, 24252], || format!("paths {paths:?}"))?;
    let mut previous = 0;
    for row in table.rows.values() {
        ensure(row.ter == previous, || format!("n={}: ter {} vs p(n-1) {previous}", row.n, row.ter))?;
        ensure(row.ext == row.paths - previous, || format!("n={}: ext {}", row.n, row.ext))?;
        previous = row.paths;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    for n in 2..=5 {
        let direct_paths = enumerate_paths(n, Method::Direct).map_err(|e| e.to_string())?;
        let direct_cycles = enumerate_cycles(n, Method::Direct).map_err(|e| e.to_string())?;
        let one_loop = enumerate_diagrams(2 * n + 2, 1).map_err(|e| e.to_string())?.len();
        let loopless = enumerate_diagrams(2 * n, 0).map_err(|e| e.to_string())?.len();
        ensure(direct_paths.len() == one_loop, || format!("n={n}: {} paths vs {one_loop} diagrams", direct_paths.len()))?;
        ensure(direct_cycles.len() == loopless, || format!("n={n}: {} cycles vs {loopless} diagrams", direct_cycles.len()))?;
        let ter = direct_paths
            .iter()
            .filter(|p| {
                let (a, b) = p.path_endpoints().unwrap();
                a.antipode() == b
            })
            .count();
        let ter_diagrams = enumerate_diagrams(2 * n, 1).map_err(|e| e.to_string())?.len();
        ensure(ter == ter_diagrams, || format!("n={n}: {ter} ter-paths vs {ter_diagrams} diagrams"))?;
        let chord_paths = enumerate_paths(n, Method::Chords).map_err(|e| e.to_string())?;
        let chord_cycles = enumerate_cycles(n, Method::Chords).map_err(|e| e.to_string())?;
        ensure(chord_paths == direct_paths, || format!("n={n}: path representatives differ"))?;
        ensure(chord_cycles == direct_cycles, || format!("n={n}: cycle representatives differ"))?;
    }
    Ok(())
}

/// Distinct nets from deleting each edge of `cycle`, up to lattice isometry.
fn geometric_ext_nets(cycle: &SpanningSubgraph) -> usize {
    let nets: HashSet<_> = cycle
        .edges()
        .iter()
        .map(|&e| {
            let rest: Vec<_> = cycle.edges().iter().copied().filter(|&f| f != e).collect();
            let path = SpanningSubgraph::validated(cycle.n(), SubgraphKind::Path, rest).unwrap();
            canonical_net(&develop_tree(&path, label("1")).unwrap())
        })
        .collect();
    nets.len()
}

fn criterion_7() -> Outcome {
    let cycles = enumerate_cycles(4, Method::Direct).map_err(|e| e.to_string())?;
    ensure(cycles.len() == 7, || format!("{} cycles at n=4", cycles.len()))?;
    let mut total = 0;
    for c in &cycles {
        let orbits = edge_orbit_count(&diagram_from_cycle(c).map_err(|e| e.to_string())?);
        let geometric = geometric_ext_nets(c);
        ensure(orbits == geometric, || format!("{c}: {orbits} edge orbits, {geometric} distinct nets"))?;
        total += orbits;
    }
    ensure(total == 20, || format!("n=4 orbit total {total}"))?;

    let mut histogram = BTreeMap::new();
    for d in enumerate_diagrams(10, 0).map_err(|e| e.to_string())? {
        *histogram.entry(edge_orbit_count(&d)).or_insert(0usize) += 1;
    }
    for (value, count) in [(1, 1), (3, 8), (5, 5), (10, 6)] {
        ensure(histogram.get(&value) == Some(&count), || format!("n=5 histogram {histogram:?}"))?;
    }
    ensure([4, 7, 8, 9].iter().all(|v| !histogram.contains_key(v)), || format!("n=5 histogram {histogram:?}"))?;
    let sum: usize = histogram.iter().map(|(k, v)| k * v).sum();
    ensure(sum == 160, || format!("n=5 orbit total {sum}"))
}

fn criterion_8() -> Outcome {
    for n in 5..=8 {
        let profile = maxnet_profiles(n).map_err(|e| e.to_string())?;
        for v in [1, n.div_ceil(2), n, 2 * n] {
            let witness = profile.witnesses.get(&v).ok_or_else(|| format!("n={n}: no diagram with {v} orbits"))?;
            ensure(edge_orbit_count(witness) == v, || format!("n={n}: witness for {v} is wrong"))?;
        }
    }
    Ok(())
}

fn suite_rolls(rng: &mut ChaCha8Rng) -> Outcome {
    for case in 0..CASES {
        let n = rng.gen_range(2..=9);
        let base = FacetLabel::from_index(rng.gen_range(0..2 * n), n);
        let mut s = RollState::initial(n, base).unwrap();
        for _ in 0..rng.gen_range(0..12) {
            let axis = rng.gen_range(1..n as i32);
            let d = Direction::new(if rng.gen() { axis } else { -axis }, n).unwrap();
            s = s.roll(d);
        }
        let axis = rng.gen_range(1..n as i32);
        let d = Direction::new(if rng.gen() { axis } else { -axis }, n).unwrap();
        ensure(s.roll(d).roll(d.reversed()) == s, || format!("case {case}: inverse fails"))?;
        ensure(s.roll(d).roll(d).roll(d).roll(d) == s, || format!("case {case}: order four fails"))?;
    }
    Ok(())
}

fn suite_state_bijection(rng: &mut ChaCha8Rng) -> Outcome {
    for case in 0..CASES {
        let n = rng.gen_range(2..=9);
        let mut s = RollState::initial(n, FacetLabel::plain(1)).unwrap();
        for _ in 0..rng.gen_range(1..20) {
            let axis = rng.gen_range(1..n as i32);
            s = s.roll(Direction::new(if rng.gen() { axis } else { -axis }, n).unwrap());
            let mut seen = HashSet::new();
            seen.insert(s.at(Slot::Base));
            seen.insert(s.at(Slot::Antibase));
            ensure(s.at(Slot::Antibase) == s.at(Slot::Base).antipode(), || format!("case {case}: base pair"))?;
            for k in 1..n as i32 {
                let plus = s.at(Slot::Toward(Direction::new(k, n).unwrap()));
                let minus = s.at(Slot::Toward(Direction::new(-k, n).unwrap()));
                ensure(plus.antipode() == minus, || format!("case {case}: slot pair {k}"))?;
                seen.insert(plus);
                seen.insert(minus);
            }
            ensure(seen.len() == 2 * n, || format!("case {case}: slots are not a bijection"))?;
            ensure(FacetLabel::all(n).all(|l| s.at(s.slot_of(l)) == l), || format!("case {case}: slot_of"))?;
        }
    }
    Ok(())
}

fn suite_order_independence(rng: &mut ChaCha8Rng) -> Outcome {
    for case in 0..CASES {
        let t = random_tree(rng, 2, 8);
        let base = FacetLabel::from_index(rng.gen_range(0..2 * t.n()), t.n());
        let a = develop_tree(&t, base).unwrap();
        let b = develop_tree_shuffled(&t, base, rng).unwrap();
        ensure(a.placements() == b.placements(), || format!("case {case}: {t}"))?;
    }
    Ok(())
}

fn suite_uturn(rng: &mut ChaCha8Rng) -> Outcome {
    for case in 0..CASES {
        let t = random_tree(rng, 2, 8);
        let dev = develop_tree(&t, label("1")).unwrap();
        uturn_audit(&dev).map_err(|c| format!("case {case}: {t}: {c:?}"))?;
    }
    Ok(())
}

fn suite_canonical(rng: &mut ChaCha8Rng) -> Outcome {
    for case in 0..CASES {
        let t = random_tree(rng, 2, 7);
        let c = canonical_form(&t);
        ensure(canonical_form(&c) == c, || format!("case {case}: not idempotent on {t}"))?;
        let g = SignedPermutation::random(t.n(), rng);
        ensure(canonical_form(&g.apply_subgraph(&t)) == c, || format!("case {case}: not invariant on {t}"))?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    suite_rolls(&mut rng).map_err(|e| format!("roll identities: {e}"))?;
    suite_state_bijection(&mut rng).map_err(|e| format!("state bijection: {e}"))?;
    suite_order_independence(&mut rng).map_err(|e| format!("order independence: {e}"))?;
    suite_uturn(&mut rng).map_err(|e| format!("u-turn audit: {e}"))?;
    suite_canonical(&mut rng).map_err(|e| format!("canonical form: {e}"))
}

#[test]
fn acceptance() {
    let minutes = |m: u64| Duration::from_secs(60 * m);
    let mut passed = Vec::new();
    passed.push(run(1, "canonical tree counts 11 and 261", minutes(1), criterion_1));

    let mut partition = None;
    passed.push(run(2, "261 nets at n=4 and 10,000 random trees at n=5..8 are collision-free", minutes(5), || {
        let (net, part) = criteria_2_and_3();
        partition = Some(part);
        net
    }));
    passed.push(run(3, "every criterion 2 net has a cube-partition box grown one unit per facet", minutes(5), || {
        partition.unwrap_or_else(|| Err("criterion 2 did not run".into()))
    }));

    passed.push(run(4, "every cube partition for n<=12 is realized", minutes(1), criterion_4));
    passed.push(run(5, "cycle and path counts for n=2..7 via chord diagrams", minutes(5), criterion_5));
    passed.push(run(6, "direct enumeration agrees with chord diagrams for n<=5", minutes(5), criterion_6));
    passed.push(run(7, "ext-path net counts at n=4 and n=5", minutes(2), criterion_7));
    passed.push(run(8, "orbit counts 1, ceil(n/2), n, 2n occur for n=5..8", minutes(2), criterion_8));
    passed.push(run(9, "property suites, 10,000 cases each", minutes(10), criterion_9));

    let failed = passed.iter().filter(|&&ok| !ok).count();
    println!("{} of {} criteria passed", passed.len() - failed, passed.len());
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
