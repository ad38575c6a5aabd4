use std::collections::BTreeMap;
use std::fmt::Write as _;

use cubenets::chords;
use cubenets::develop::{develop_path, develop_tree, Development};
use cubenets::enumerate::{self, Budget, Method};
use cubenets::net::{find_collision, render_svg, CubePartition, NetJson};
use cubenets::partition::{enumerate_cube_partitions, plan_slides, realize_partition};
use cubenets::random::random_spanning_tree;
use cubenets::{cube_partition_of, Direction, FacetLabel, SpanningSubgraph, SubgraphKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::{ChordsArgs, EnumerateArgs, Failure, Format, Kind, PartitionsArgs, TableArgs, UnfoldArgs, VerifyArgs};

type Outcome = Result<String, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn no_svg() -> Failure {
    usage("SVG output is only available for unfold with --dim 3")
}

fn development_text(dev: &Development) -> String {
    let mut out = String::new();
    for (label, p) in dev.placements() {
        let coords: Vec<String> = p.iter().map(i32::to_string).collect();
        writeln!(out, "{label}: ({})", coords.join(",")).unwrap();
    }
    match cube_partition_of(dev) {
        Ok(p) if dev.is_spanning() => writeln!(out, "partition: {p}").unwrap(),
        _ => writeln!(out, "non-spanning: {} of {} facets placed", dev.order().len(), 2 * dev.n()).unwrap(),
    }
    out
}

pub fn unfold(a: &UnfoldArgs) -> Outcome {
    let n = a.dim;
    let base: FacetLabel = a.base.parse()?;
    base.check(n)?;
    let dev = match (&a.rolls, &a.tree) {
        (Some(word), None) => develop_path(n, base, &Direction::parse_word(word, n)?)?,
        (None, Some(edges)) => develop_tree(&SpanningSubgraph::parse(n, SubgraphKind::Tree, edges)?, base)?,
        _ => return Err(usage("give exactly one of --rolls and --tree")),
    };
    let report = match a.format {
        Format::Json => pretty(&serde_json::to_value(NetJson::new(&dev)).expect("net serializes")),
        Format::Text => development_text(&dev),
        Format::Svg => render_svg(&dev).ok_or_else(no_svg)?,
    };
    match find_collision(&dev) {
        Some(c) => Err(Failure::Verification {
            report,
            reason: format!("overlap: {c}"),
        }),
        None => Ok(report),
    }
}

pub fn enumerate(a: &EnumerateArgs) -> Outcome {
    let method = Method::from(a.method);
    let found = match a.kind {
        Kind::Trees if method != Method::Direct => {
            return Err(usage("trees are only enumerated with --method direct"))
        }
        Kind::Trees => enumerate::enumerate_trees(a.dim)?,
        Kind::Paths => enumerate::enumerate_paths(a.dim, method)?,
        Kind::Cycles => enumerate::enumerate_cycles(a.dim, method)?,
    };
    let kind = format!("{:?}", a.kind).to_lowercase();
    Ok(match (a.format, a.count_only) {
        (Format::Json, true) => pretty(&json!({"n": a.dim, "kind": kind, "count": found.len()})),
        (Format::Json, false) => pretty(&json!({
            "n": a.dim,
            "kind": kind,
            "count": found.len(),
            "items": found.iter().map(SpanningSubgraph::to_json).collect::<Vec<_>>(),
        })),
        (Format::Text, true) => format!("{}\n", found.len()),
        (Format::Text, false) => found.iter().map(|s| format!("{s}\n")).collect(),
        (Format::Svg, _) => return Err(no_svg()),
    })
}

#[derive(Default)]
struct Tally {
    trees: usize,
    collisions: Vec<String>,
    partitions: BTreeMap<CubePartition, usize>,
}

impl Tally {
    fn record(mut self, t: &SpanningSubgraph) -> Result<Self, cubenets::Error> {
        let dev = develop_tree(t, FacetLabel::plain(1))?;
        self.trees += 1;
        if find_collision(&dev).is_some() {
            self.collisions.push(t.to_string());
        } else {
            *self.partitions.entry(cube_partition_of(&dev)?).or_insert(0) += 1;
        }
        Ok(self)
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.trees += other.trees;
        self.collisions.extend(other.collisions);
        for (p, k) in other.partitions {
            *self.partitions.entry(p).or_insert(0) += k;
        }
        self
    }
}

pub fn verify(a: &VerifyArgs) -> Outcome {
    let n = a.dim;
    let (mode, trees) = if a.exhaustive {
        if n > a.exhaustive_limit {
            return Err(usage(format!(
                "--exhaustive is limited to n <= {}; use --samples or raise --exhaustive-limit",
                a.exhaustive_limit
            )));
        }
        let budget = Budget {
            trees: a.exhaustive_limit,
            ..Budget::default()
        };
        ("exhaustive", enumerate::enumerate_trees_within(n, &budget)?)
    } else {
        let samples = a.samples.expect("clap requires --samples without --exhaustive");
        if !(2..=cubenets::MAX_DIM).contains(&n) {
            return Err(cubenets::Error::Dimension(n).into());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        let trees = (0..samples).map(|_| random_spanning_tree(n, &mut rng)).collect();
        ("samples", trees)
    };
    let mut tally = trees
        .par_iter()
        .try_fold(Tally::default, Tally::record)
        .try_reduce(Tally::default, |x, y| Ok(x.merge(y)))?;
    tally.collisions.sort();
    let report = match a.format {
        Format::Json => pretty(&json!({
            "n": n,
            "mode": mode,
            "seed": if a.exhaustive { Value::Null } else { json!(a.seed) },
            "trees": tally.trees,
            "collisions": tally.collisions.len(),
            "colliding_trees": tally.collisions,
            "partitions": tally
                .partitions
                .iter()
                .map(|(p, k)| json!({"partition": p, "count": k}))
                .collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut out = format!("n={n} {mode}: {} trees, {} collisions\n", tally.trees, tally.collisions.len());
            for (p, k) in &tally.partitions {
                writeln!(out, "{p}\t{k}").unwrap();
            }
            for t in &tally.collisions {
                writeln!(out, "collision: {t}").unwrap();
            }
            out
        }
        Format::Svg => return Err(no_svg()),
    };
    if tally.collisions.is_empty() {
        Ok(report)
    } else {
        Err(Failure::Verification {
            report,
            reason: format!("{} of {} trees overlap", tally.collisions.len(), tally.trees),
        })
    }
}

pub fn partitions(a: &PartitionsArgs) -> Outcome {
    let parts = enumerate_cube_partitions(a.dim)?;
    let mut rows = Vec::with_capacity(parts.len());
    let mut text = String::new();
    for p in &parts {
        if !a.realize {
            rows.push(json!({"partition": p}));
            writeln!(text, "{p}").unwrap();
            continue;
        }
        let seq = realize_partition(p)?;
        let dev = develop_path(a.dim, FacetLabel::plain(1), &seq.moves)?;
        let slides: Vec<usize> = plan_slides(p).iter().map(|s| s.direction).collect();
        rows.push(json!({
            "partition": p,
            "slides": slides,
            "rolls": seq.word(),
            "net": NetJson::new(&dev),
        }));
        writeln!(text, "{p}\t{}", seq.word()).unwrap();
    }
    match a.format {
        Format::Json => Ok(pretty(&json!({"n": a.dim, "count": parts.len(), "partitions": rows}))),
        Format::Text => Ok(text),
        Format::Svg => Err(no_svg()),
    }
}

pub fn chords(a: &ChordsArgs) -> Outcome {
    let limit = Budget::default().chords;
    if a.dim > limit {
        return Err(cubenets::Error::ResourceLimit {
            what: "chord diagram enumeration",
            requested: a.dim,
            limit,
        }
        .into());
    }
    if a.ext_net_counts && a.loops != 0 {
        return Err(usage("--ext-net-counts applies to loopless diagrams (--loops 0)"));
    }
    let diagrams = chords::enumerate_diagrams(2 * a.dim, a.loops as usize)?;
    let counts: Option<Vec<usize>> = a
        .ext_net_counts
        .then(|| diagrams.iter().map(chords::edge_orbit_count).collect());
    match a.format {
        Format::Json => {
            let items: Vec<Value> = diagrams
                .iter()
                .enumerate()
                .map(|(i, d)| {
                    let mut v = serde_json::to_value(d.to_json()).expect("diagram serializes");
                    if let Some(c) = &counts {
                        v["ext_nets"] = json!(c[i]);
                    }
                    v
                })
                .collect();
            let mut out = json!({"n": a.dim, "m": 2 * a.dim, "loops": a.loops, "count": diagrams.len(), "diagrams": items});
            if let Some(c) = &counts {
                out["ext_nets_total"] = json!(c.iter().sum::<usize>());
            }
            Ok(pretty(&out))
        }
        Format::Text => {
            let mut out = String::new();
            for (i, d) in diagrams.iter().enumerate() {
                match &counts {
                    Some(c) => writeln!(out, "{d}\t{}", c[i]).unwrap(),
                    None => writeln!(out, "{d}").unwrap(),
                }
            }
            if let Some(c) = &counts {
                writeln!(out, "total\t{}", c.iter().sum::<usize>()).unwrap();
            }
            Ok(out)
        }
        Format::Svg => Err(no_svg()),
    }
}

pub fn table(a: &TableArgs) -> Outcome {
    let table = enumerate::build_table(a.max_dim, a.method.into())?;
    match a.format {
        Format::Json => Ok(pretty(&serde_json::to_value(&table).expect("table serializes"))),
        Format::Text => Ok(table.to_text()),
        Format::Svg => Err(no_svg()),
    }
}
