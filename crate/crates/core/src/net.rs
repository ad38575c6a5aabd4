//! Nets: overlap checks, bounding boxes, cube partitions and congruence
//! classes of developments.

use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::develop::{Development, DevelopmentJson, Point};
use crate::error::{Error, Result};
use crate::label::FacetLabel;

/// Two facets developed onto the same lattice cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collision {
    pub first: FacetLabel,
    pub second: FacetLabel,
    pub at: Point,
}

impl fmt::Display for Collision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "facets {} and {} both at {:?}", self.first, self.second, self.at)
    }
}

pub fn find_collision(dev: &Development) -> Option<Collision> {
    let mut placed = dev.placements();
    placed.sort_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)));
    placed.windows(2).find(|w| w[0].1 == w[1].1).map(|w| Collision {
        first: w[0].0,
        second: w[1].0,
        at: w[0].1.clone(),
    })
}

/// True iff every placed facet has its own lattice cell.
pub fn is_net(dev: &Development) -> bool {
    find_collision(dev).is_none()
}

/// Extent of the placements along each axis, in facet widths.
pub fn bounding_box(dev: &Development) -> Vec<usize> {
    extents(dev.placements().into_iter().map(|(_, p)| p), dev.n() - 1)
}

fn extents<'a>(points: impl IntoIterator<Item = &'a Point>, dim: usize) -> Vec<usize> {
    let mut lo = vec![i32::MAX; dim];
    let mut hi = vec![i32::MIN; dim];
    let mut any = false;
    for p in points {
        any = true;
        for i in 0..dim {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    if !any {
        return vec![0; dim];
    }
    lo.iter().zip(&hi).map(|(a, b)| (b - a + 1) as usize).collect()
}

/// A partition of `3n-2` into `n-1` parts, each at least 2, stored descending.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CubePartition(Vec<usize>);

impl CubePartition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let n = parts.len() + 1;
        let fail = |reason| Error::Partition {
            parts: parts.clone(),
            reason,
        };
        if parts.is_empty() {
            return Err(fail("no parts"));
        }
        if parts.iter().any(|&p| p < 2) {
            return Err(fail("every part must be at least 2"));
        }
        if parts.iter().sum::<usize>() != 3 * n - 2 {
            return Err(fail("parts must sum to 3n-2"));
        }
        Ok(CubePartition(parts))
    }

    /// Cube dimension `n` (one more than the number of parts).
    pub fn n(&self) -> usize {
        self.0.len() + 1
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for CubePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// The sorted bounding-box extents of a spanning development.
pub fn cube_partition_of(dev: &Development) -> Result<CubePartition> {
    if !dev.is_spanning() {
        return Err(Error::Partition {
            parts: bounding_box(dev),
            reason: "development does not place every facet",
        });
    }
    let parts = bounding_box(dev);
    if parts.len() != dev.n() - 1 {
        return Err(Error::Partition {
            parts,
            reason: "wrong number of parts",
        });
    }
    CubePartition::new(parts)
}

/// Sum of bounding-box extents after each facet is placed, in placement order.
pub fn box_growth_trace(dev: &Development) -> Vec<usize> {
    growth_trace(&dev.points_in_order(), dev.n() - 1)
}

/// Sum of bounding-box extents after each prefix of `points`.
pub fn growth_trace(points: &[&Point], dim: usize) -> Vec<usize> {
    let mut lo = vec![i32::MAX; dim];
    let mut hi = vec![i32::MIN; dim];
    points
        .iter()
        .map(|p| {
            for i in 0..dim {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
            lo.iter().zip(&hi).map(|(a, b)| (b - a + 1) as usize).sum()
        })
        .collect()
}

/// Signed permutations of `dim` coordinates as `(perm, sign mask)` pairs.
fn coordinate_isometries(dim: usize) -> impl Iterator<Item = (Vec<u8>, u32)> {
    crate::symmetry::permutations(dim)
        .into_iter()
        .flat_map(move |p| (0..1u32 << dim).map(move |m| (p.clone(), m)))
}

fn transform(points: &[&Point], perm: &[u8], mask: u32) -> Vec<Point> {
    let dim = perm.len();
    let mut out: Vec<Point> = points
        .iter()
        .map(|p| {
            let mut q = vec![0; dim];
            for i in 0..dim {
                q[perm[i] as usize] = if mask >> i & 1 == 1 { -p[i] } else { p[i] };
            }
            q
        })
        .collect();
    if let Some(dim_lo) = (0..dim)
        .map(|i| out.iter().map(|q| q[i]).min())
        .collect::<Option<Vec<i32>>>()
    {
        for q in &mut out {
            for (x, lo) in q.iter_mut().zip(&dim_lo) {
                *x -= lo;
            }
        }
    }
    out
}

/// The lexicographically least sorted point set congruent to `points` under
/// signed coordinate permutations, translated so each coordinate's minimum is 0.
pub fn canonical_point_set(points: &[&Point], dim: usize) -> Vec<Point> {
    let mut best: Option<Vec<Point>> = None;
    for (perm, mask) in coordinate_isometries(dim) {
        let mut img = transform(points, &perm, mask);
        img.sort_unstable();
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img);
        }
    }
    best.unwrap_or_default()
}

/// The shape of a development, ignoring labels. Exhaustive over the
/// `2^(n-1) (n-1)!` coordinate isometries, so intended for small `n`.
pub fn canonical_net(dev: &Development) -> Vec<Point> {
    let pts: Vec<&Point> = dev.placements().into_iter().map(|(_, p)| p).collect();
    canonical_point_set(&pts, dev.n() - 1)
}

/// Like [`canonical_net`] but keeping each cell's facet label.
pub fn canonical_labeled_net(dev: &Development) -> Vec<(Point, FacetLabel)> {
    let placed = dev.placements();
    let pts: Vec<&Point> = placed.iter().map(|(_, p)| *p).collect();
    let mut best: Option<Vec<(Point, FacetLabel)>> = None;
    for (perm, mask) in coordinate_isometries(dev.n() - 1) {
        let mut img: Vec<_> = transform(&pts, &perm, mask)
            .into_iter()
            .zip(placed.iter().map(|(l, _)| *l))
            .collect();
        img.sort_unstable();
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img);
        }
    }
    best.unwrap_or_default()
}

/// A collision-free spanning development.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Net {
    development: Development,
    partition: CubePartition,
}

impl Net {
    pub fn new(development: Development) -> Result<Self, NetError> {
        if !development.is_spanning() {
            return Err(NetError::NotSpanning(development.order().len()));
        }
        if let Some(c) = find_collision(&development) {
            return Err(NetError::Collision(c));
        }
        let partition = cube_partition_of(&development).map_err(NetError::Partition)?;
        Ok(Net {
            development,
            partition,
        })
    }

    pub fn development(&self) -> &Development {
        &self.development
    }

    pub fn partition(&self) -> &CubePartition {
        &self.partition
    }

    pub fn to_json(&self) -> NetJson {
        NetJson::new(&self.development)
    }

    /// SVG drawing for `n = 3`; `None` otherwise.
    pub fn to_svg(&self) -> Option<String> {
        render_svg(&self.development)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum NetError {
    #[error("development places only {0} facets")]
    NotSpanning(usize),
    #[error("overlap: {0}")]
    Collision(Collision),
    #[error(transparent)]
    Partition(Error),
}

/// Wire form of a (possibly partial) development with its box partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetJson {
    #[serde(flatten)]
    pub development: DevelopmentJson,
    pub spanning: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub partition: Option<CubePartition>,
}

impl NetJson {
    pub fn new(dev: &Development) -> Self {
        NetJson {
            development: dev.to_json(),
            spanning: dev.is_spanning(),
            partition: cube_partition_of(dev).ok(),
        }
    }
}

const CELL: i32 = 100;
const STROKE: i32 = 2;
const MARGIN: i32 = 10;

/// One 100-unit square per facet, labelled at its centre. Planar
/// developments (`n = 3`) only.
pub fn render_svg(dev: &Development) -> Option<String> {
    if dev.n() != 3 {
        return None;
    }
    let placed = dev.placements();
    let min_x = placed.iter().map(|(_, p)| p[0]).min()?;
    let max_y = placed.iter().map(|(_, p)| p[1]).max()?;
    let bbox = bounding_box(dev);
    let width = bbox[0] as i32 * CELL + 2 * MARGIN;
    let height = bbox[1] as i32 * CELL + 2 * MARGIN;

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    for (label, p) in placed {
        // Lattice y grows upward; SVG y grows downward.
        let x = (p[0] - min_x) * CELL + MARGIN;
        let y = (max_y - p[1]) * CELL + MARGIN;
        writeln!(
            svg,
            r#"  <rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="white" stroke="black" stroke-width="{STROKE}"/>"#
        )
        .unwrap();
        writeln!(
            svg,
            r#"  <text x="{}" y="{}" text-anchor="middle" dominant-baseline="central" font-family="sans-serif" font-size="32">{label}</text>"#,
            x + CELL / 2,
            y + CELL / 2
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    Some(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::develop::{develop_path, develop_tree};
    use crate::roll::Direction;
    use crate::subgraph::{SpanningSubgraph, SubgraphKind};

    fn l(s: &str) -> FacetLabel {
        s.parse().unwrap()
    }

    fn staircase() -> Development {
        develop_path(3, l("1"), &Direction::parse_word("+1,+2,+1,+2,+1", 3).unwrap()).unwrap()
    }

    fn cross() -> Development {
        let t = SpanningSubgraph::parse(3, SubgraphKind::Tree, "1-2,1-2*,1-3,1-3*,2-1*").unwrap();
        develop_tree(&t, l("1")).unwrap()
    }

    #[test]
    fn boxes_and_partitions() {
        assert!(is_net(&cross()));
        assert_eq!(bounding_box(&staircase()), vec![4, 3]);
        assert_eq!(bounding_box(&cross()), vec![4, 3]);
        assert_eq!(cube_partition_of(&staircase()).unwrap().parts(), &[4, 3]);
        let line = develop_path(2, l("1"), &Direction::parse_word("+1,+1,+1", 2).unwrap()).unwrap();
        assert_eq!(bounding_box(&line), vec![4]);
        assert_eq!(cube_partition_of(&line).unwrap().parts(), &[4]);
    }

    #[test]
    fn growth_traces() {
        assert_eq!(box_growth_trace(&staircase()), vec![2, 3, 4, 5, 6, 7]);
        assert_eq!(box_growth_trace(&cross()), vec![2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn partition_rules() {
        assert!(CubePartition::new(vec![3, 4]).is_ok());
        assert_eq!(CubePartition::new(vec![3, 4]).unwrap().to_string(), "(4,3)");
        assert!(CubePartition::new(vec![5, 1, 4]).is_err());
        assert!(CubePartition::new(vec![4, 4]).is_err());
        assert!(CubePartition::new(vec![]).is_err());
    }

    #[test]
    fn partial_development_has_no_partition() {
        let dev = develop_path(3, l("1"), &Direction::parse_word("+1,+1,+1", 3).unwrap()).unwrap();
        assert!(cube_partition_of(&dev).is_err());
        assert!(matches!(Net::new(dev), Err(NetError::NotSpanning(4))));
    }

    #[test]
    fn mirror_images_share_a_shape() {
        let mirror = develop_path(3, l("1"), &Direction::parse_word("+2,+1,+2,+1,+2", 3).unwrap()).unwrap();
        let flipped = develop_path(3, l("1"), &Direction::parse_word("-1,+2,-1,+2,-1", 3).unwrap()).unwrap();
        assert_eq!(canonical_net(&staircase()), canonical_net(&mirror));
        assert_eq!(canonical_net(&staircase()), canonical_net(&flipped));
        assert_ne!(canonical_net(&staircase()), canonical_net(&cross()));
        let c = canonical_net(&cross());
        assert_eq!(canonical_point_set(&c.iter().collect::<Vec<_>>(), 2), c);
    }

    #[test]
    fn labeled_shapes_distinguish_labels() {
        let a = canonical_labeled_net(&staircase());
        assert_eq!(a.len(), 6);
        assert!(a.iter().all(|(p, _)| p.iter().all(|&x| x >= 0)));
    }

    #[test]
    fn growth_trace_of_repeated_cell_stalls() {
        let pts = [vec![0, 0], vec![0, 0], vec![0, 1]];
        let refs: Vec<&Point> = pts.iter().collect();
        assert_eq!(growth_trace(&refs, 2), vec![2, 2, 3]);
    }

    #[test]
    fn net_json_and_svg() {
        let net = Net::new(cross()).unwrap();
        let json = serde_json::to_string(&net.to_json()).unwrap();
        assert!(json.contains(r#""spanning":true,"partition":[4,3]"#), "{json}");
        let svg = net.to_svg().unwrap();
        assert_eq!(svg.matches("<rect").count(), 6);
        assert!(svg.contains(r#"width="100" height="100""#));
        assert!(svg.contains(r#"stroke-width="2""#));
        assert!(svg.contains(">1*</text>"));
    }
}
