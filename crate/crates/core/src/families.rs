//! Named graphs and parametric families.
//!
//! Labeling conventions:
//! - path and cycle: consecutive vertices `0 ~ 1 ~ … ~ n-1` (cycle closes `n-1 ~ 0`)
//! - star `K_{1,k}`: center 0, leaves `1..=k` (size is the number of leaves)
//! - wheel `W_n`: hub 0, rim `1..n` in cyclic order (size is the total order)
//! - triangle fan `T_n`: hub 0, triangles `{0, 2i+1, 2i+2}` (size is the total order)
//! - Petersen: outer 5-cycle `0..5`, spokes `i ~ i+5`, inner pentagram `i+5 ~ (i+2)%5 + 5`
//! - `Γ₀`: triangle `0,1,2`, pendants `i+3 ~ i`, and vertex 6 joined to `3,4,5`
//! - rank-5 graphs `D6, D14, D15, D17`: literal adjacency matrices

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Star,
    Wheel,
    TriangleFan,
    Petersen,
    Gamma0,
    Paw,
    Bull,
    Antenna,
    House,
    CoC6,
    K4,
    D6,
    D14,
    D15,
    D17,
    Figure1Gamma2,
}

impl Family {
    pub const ALL: [Family; 19] = [
        Family::Path,
        Family::Cycle,
        Family::Complete,
        Family::Star,
        Family::Wheel,
        Family::TriangleFan,
        Family::Petersen,
        Family::Gamma0,
        Family::Paw,
        Family::Bull,
        Family::Antenna,
        Family::House,
        Family::CoC6,
        Family::K4,
        Family::D6,
        Family::D14,
        Family::D15,
        Family::D17,
        Family::Figure1Gamma2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Star => "star",
            Family::Wheel => "wheel",
            Family::TriangleFan => "triangle-fan",
            Family::Petersen => "petersen",
            Family::Gamma0 => "gamma0",
            Family::Paw => "paw",
            Family::Bull => "bull",
            Family::Antenna => "antenna",
            Family::House => "house",
            Family::CoC6 => "co-c6",
            Family::K4 => "k4",
            Family::D6 => "d6",
            Family::D14 => "d14",
            Family::D15 => "d15",
            Family::D17 => "d17",
            Family::Figure1Gamma2 => "figure1-gamma2",
        }
    }

    pub fn is_parametric(self) -> bool {
        matches!(
            self,
            Family::Path
                | Family::Cycle
                | Family::Complete
                | Family::Star
                | Family::Wheel
                | Family::TriangleFan
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        let alias = match key.as_str() {
            "coc6" | "prism" => Some(Family::CoC6),
            "t" | "fan" => Some(Family::TriangleFan),
            "gamma2" => Some(Family::Figure1Gamma2),
            _ => None,
        };
        alias
            .or_else(|| Family::ALL.into_iter().find(|f| f.name() == key))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub family: Family,
    pub size: Option<usize>,
}

impl FamilySpec {
    pub fn fixed(family: Family) -> Self {
        Self { family, size: None }
    }

    pub fn sized(family: Family, size: usize) -> Self {
        Self {
            family,
            size: Some(size),
        }
    }
}

const D6_ROWS: [&str; 7] = [
    "0100010", "1010011", "0101011", "0010111", "0001001", "1111000", "0111100",
];
const D14_ROWS: [&str; 6] = ["010011", "101010", "010111", "001001", "111001", "101110"];
const D15_ROWS: [&str; 6] = ["010011", "101011", "010101", "001011", "110101", "111110"];
const D17_ROWS: [&str; 7] = [
    "0100111", "1010101", "0101111", "0010011", "1110010", "1011101", "1111010",
];
const GAMMA2_ROWS: [&str; 6] = ["010010", "101000", "010101", "001010", "100101", "001010"];

fn need_size(spec: &FamilySpec, min: usize) -> Result<usize> {
    match spec.size {
        None => Err(Error::InvalidArgument(format!(
            "family {} needs a size",
            spec.family
        ))),
        Some(n) if n < min => Err(Error::InvalidArgument(format!(
            "family {} needs size >= {min}, got {n}",
            spec.family
        ))),
        Some(n) => Ok(n),
    }
}

pub fn build(spec: &FamilySpec) -> Result<Graph> {
    if !spec.family.is_parametric() && spec.size.is_some() {
        return Err(Error::InvalidArgument(format!(
            "family {} takes no size",
            spec.family
        )));
    }
    match spec.family {
        Family::Path => path(need_size(spec, 1)?),
        Family::Cycle => cycle(need_size(spec, 3)?),
        Family::Complete => complete(need_size(spec, 1)?),
        Family::Star => {
            let k = need_size(spec, 1)?;
            let e: Vec<_> = (1..=k).map(|i| (0, i)).collect();
            Graph::from_edges(k + 1, &e)
        }
        Family::Wheel => {
            let n = need_size(spec, 4)?;
            let rim = n - 1;
            let mut e: Vec<_> = (1..n).map(|i| (0, i)).collect();
            e.extend((0..rim).map(|i| (i + 1, (i + 1) % rim + 1)));
            Graph::from_edges(n, &e)
        }
        Family::TriangleFan => {
            let n = need_size(spec, 5)?;
            if n % 2 == 0 {
                return Err(Error::InvalidArgument(format!(
                    "triangle fan needs an odd order, got {n}"
                )));
            }
            let mut e: Vec<_> = (1..n).map(|i| (0, i)).collect();
            e.extend((0..(n - 1) / 2).map(|t| (2 * t + 1, 2 * t + 2)));
            Graph::from_edges(n, &e)
        }
        Family::Petersen => {
            let mut e = Vec::new();
            for i in 0..5 {
                e.push((i, (i + 1) % 5));
                e.push((i, i + 5));
                e.push((i + 5, (i + 2) % 5 + 5));
            }
            Graph::from_edges(10, &e)
        }
        Family::Gamma0 => Graph::from_edges(
            7,
            &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6), (4, 6), (5, 6)],
        ),
        Family::Paw => Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]),
        Family::Bull => Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)]),
        Family::Antenna => Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 5)],
        ),
        Family::House => Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (3, 4)]),
        Family::CoC6 => Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        ),
        Family::K4 => complete(4),
        Family::D6 => Graph::from_matrix_rows(&D6_ROWS),
        Family::D14 => Graph::from_matrix_rows(&D14_ROWS),
        Family::D15 => Graph::from_matrix_rows(&D15_ROWS),
        Family::D17 => Graph::from_matrix_rows(&D17_ROWS),
        Family::Figure1Gamma2 => Graph::from_matrix_rows(&GAMMA2_ROWS),
    }
}

pub fn path(n: usize) -> Result<Graph> {
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &e)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("cycle needs n >= 3, got {n}")));
    }
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &e)
}

pub fn complete(n: usize) -> Result<Graph> {
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            e.push((i, j));
        }
    }
    Graph::from_edges(n, &e)
}

/// The reduced rank-4 graphs: paw, bull, antenna, co-C6, house, K4, P4, P5.
pub fn rank_four_graphs() -> Vec<(&'static str, Graph)> {
    let fixed = |f| build(&FamilySpec::fixed(f)).expect("fixed family builds");
    vec![
        ("paw", fixed(Family::Paw)),
        ("bull", fixed(Family::Bull)),
        ("antenna", fixed(Family::Antenna)),
        ("co-c6", fixed(Family::CoC6)),
        ("house", fixed(Family::House)),
        ("k4", fixed(Family::K4)),
        ("p4", path(4).unwrap()),
        ("p5", path(5).unwrap()),
    ]
}

pub fn rank_formula_path(n: usize) -> Result<usize> {
    if n < 1 {
        return Err(Error::InvalidArgument("path needs n >= 1".into()));
    }
    Ok(if n.is_multiple_of(2) { n } else { n - 1 })
}

pub fn rank_formula_cycle(n: usize) -> Result<usize> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("cycle needs n >= 3, got {n}")));
    }
    Ok(if n.is_multiple_of(4) { n - 2 } else { n })
}

/// Order of the Kotlov–Lovász construction of a reduced graph of rank `r`:
/// `2^((r+2)/2) - 2` for even `r`, `5 * 2^((r-3)/2) - 2` for odd `r`.
pub fn kotlov_lovasz_n(r: u32) -> Result<u128> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("rank must be >= 2, got {r}")));
    }
    let overflow = || Error::Capacity {
        what: "rank",
        n: r as usize,
        limit: 250,
    };
    let v = if r.is_multiple_of(2) {
        1u128.checked_shl((r + 2) / 2).ok_or_else(overflow)?
    } else {
        5u128
            .checked_mul(1u128.checked_shl((r - 3) / 2).ok_or_else(overflow)?)
            .ok_or_else(overflow)?
    };
    if v.leading_zeros() == 0 {
        return Err(overflow());
    }
    Ok(v - 2)
}

/// Seeds of the family closed under degree-2 vertex duplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HBase {
    C5,
    Gamma0,
    Petersen,
}

impl FromStr for HBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "c5" => Ok(HBase::C5),
            "gamma0" => Ok(HBase::Gamma0),
            "petersen" => Ok(HBase::Petersen),
            _ => Err(Error::InvalidArgument(format!("unknown base {s:?}"))),
        }
    }
}

/// Applies the duplications in order, each to a vertex of degree exactly 2
/// in the graph built so far. The clone is appended as the last vertex.
pub fn h_family_generate(base: HBase, duplications: &[usize]) -> Result<Graph> {
    let mut g = match base {
        HBase::C5 => cycle(5)?,
        HBase::Gamma0 => build(&FamilySpec::fixed(Family::Gamma0))?,
        HBase::Petersen => build(&FamilySpec::fixed(Family::Petersen))?,
    };
    for &v in duplications {
        let d = g.degree(v)?;
        if d != 2 {
            return Err(Error::InvalidArgument(format!(
                "vertex {v} has degree {d}, only degree-2 vertices may be duplicated"
            )));
        }
        g = g.duplicate_vertex(v)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Diameter;
    use crate::linalg::adjacency_matrix;

    fn rank(g: &Graph) -> usize {
        adjacency_matrix(g).rank()
    }

    #[test]
    fn build_examples() {
        let c5 = build(&FamilySpec::sized(Family::Cycle, 5)).unwrap();
        assert_eq!((c5.n(), c5.edge_count()), (5, 5));
        assert_eq!(c5.diameter(), Diameter::Finite(2));

        let g0 = build(&FamilySpec::fixed(Family::Gamma0)).unwrap();
        assert_eq!((g0.n(), g0.edge_count(), rank(&g0)), (7, 9, 7));
        let deg3: Vec<usize> = (0..7).filter(|&v| g0.degree(v).unwrap() == 3).collect();
        assert_eq!(deg3, vec![0, 1, 2, 6]);
        // The hub is the only degree-3 vertex adjacent to the former pendants.
        assert!([3, 4, 5].iter().all(|&p| g0.has_edge(6, p)));
        assert!(deg3[..3].iter().all(|&t| [3, 4, 5].iter().filter(|&&p| g0.has_edge(t, p)).count() == 1));

        let d14 = build(&FamilySpec::fixed(Family::D14)).unwrap();
        let a = adjacency_matrix(&d14);
        for (i, row) in D14_ROWS.iter().enumerate() {
            for (j, b) in row.bytes().enumerate() {
                assert_eq!(a.get(i, j).to_integer(), ((b - b'0') as i64).into());
            }
        }
    }

    #[test]
    fn build_rejections() {
        assert!(build(&FamilySpec::sized(Family::Cycle, 2)).is_err());
        assert!(build(&FamilySpec::fixed(Family::Cycle)).is_err());
        assert!(build(&FamilySpec::sized(Family::Petersen, 10)).is_err());
        assert!(build(&FamilySpec::sized(Family::TriangleFan, 6)).is_err());
        assert!(build(&FamilySpec::sized(Family::Wheel, 3)).is_err());
    }

    #[test]
    fn names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert_eq!("coC6".parse::<Family>().unwrap(), Family::CoC6);
        assert!("nonsense".parse::<Family>().is_err());
    }

    #[test]
    fn wheel_and_fan_shapes() {
        let w9 = build(&FamilySpec::sized(Family::Wheel, 9)).unwrap();
        assert_eq!(w9.edge_count(), 16);
        assert!(w9.is_dominating(0).unwrap());
        assert!((1..9).all(|v| w9.degree(v).unwrap() == 3));
        let t9 = build(&FamilySpec::sized(Family::TriangleFan, 9)).unwrap();
        assert_eq!(t9.edge_count(), 12);
        assert!((1..9).all(|v| t9.degree(v).unwrap() == 2));
    }

    #[test]
    fn rank_formulas() {
        assert_eq!(rank_formula_path(5).unwrap(), 4);
        assert_eq!(rank_formula_cycle(8).unwrap(), 6);
        assert_eq!(rank_formula_cycle(5).unwrap(), 5);
        assert!(rank_formula_cycle(2).is_err());
        assert!(rank_formula_path(0).is_err());
        for n in 3..=20 {
            assert_eq!(rank(&path(n).unwrap()), rank_formula_path(n).unwrap());
            assert_eq!(rank(&cycle(n).unwrap()), rank_formula_cycle(n).unwrap());
        }
    }

    #[test]
    fn kotlov_lovasz_values() {
        assert_eq!(kotlov_lovasz_n(4).unwrap(), 6);
        assert_eq!(kotlov_lovasz_n(5).unwrap(), 8);
        assert_eq!(kotlov_lovasz_n(2).unwrap(), 2);
        assert_eq!(kotlov_lovasz_n(3).unwrap(), 3);
        assert!(kotlov_lovasz_n(1).is_err());
        assert!(kotlov_lovasz_n(400).is_err());
    }

    #[test]
    fn h_family_examples() {
        let c5 = h_family_generate(HBase::C5, &[]).unwrap();
        assert_eq!((c5.n(), c5.edge_count()), (5, 5));
        let g0 = h_family_generate(HBase::Gamma0, &[]).unwrap();
        assert_eq!(g0.edge_count(), 2 * 7 - 5);
        let g2 = h_family_generate(HBase::C5, &[0, 0, 0]).unwrap();
        assert_eq!((g2.n(), g2.edge_count()), (8, 11));
        assert_eq!(g2.diameter(), Diameter::Finite(2));
        assert!(h_family_generate(HBase::Petersen, &[0]).is_err());
        assert!(h_family_generate(HBase::Gamma0, &[0]).is_err());
        // Γ₀ → six duplications of degree-2 vertices.
        let g4 = h_family_generate(HBase::Gamma0, &[3, 4, 5, 3, 4, 5]).unwrap();
        assert_eq!(g4.edge_count(), 2 * g4.n() - 5);
        assert_eq!(rank(&g4), 7);
    }

    #[test]
    fn rank_four_catalog() {
        for (name, g) in rank_four_graphs() {
            assert_eq!(rank(&g), 4, "{name}");
            assert!(g.is_reduced(), "{name}");
        }
        assert_eq!(path(5).unwrap().diameter(), Diameter::Finite(4));
    }
}
