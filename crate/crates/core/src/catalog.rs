//! Embedded fixtures: the local algebras of dimension at most 6 with their
//! expected invariants, and named fans, polytopes and pairs.

use serde::Serialize;

use crate::artin::Algebra;
use crate::error::{Error, Result};
use crate::ht::GaPair;
use crate::hyper::{quadric_pair, HPair};
use crate::polytope::LatticePolytope;
use crate::poly::{parse_poly, MultiPoly, VarNames};
use crate::toric::{hirzebruch_fan, product_of_lines_fan, projective_space_fan, weighted_projective_fan, Fan};

/// One row of the table of local algebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub id: usize,
    pub nvars: usize,
    pub relations: Vec<String>,
    pub dim: usize,
    pub hilbert_samuel: Vec<usize>,
    pub gorenstein: bool,
}

impl CatalogEntry {
    pub fn names(&self) -> VarNames {
        VarNames::indexed("x", 1, self.nvars)
    }

    /// `K[x1,x2]/(x1^3, x2^2)`.
    pub fn presentation_text(&self) -> String {
        if self.nvars == 0 {
            return "K".into();
        }
        let vars: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        format!("K[{}]/({})", vars.join(","), self.relations.join(", "))
    }

    pub fn relation_polys(&self) -> Result<Vec<MultiPoly>> {
        let names = self.names();
        self.relations.iter().map(|r| parse_poly(r, &names)).collect()
    }

    pub fn algebra(&self) -> Result<Algebra> {
        Algebra::from_presentation(self.nvars, &self.relation_polys()?)
    }
}

/// `x_i^2` and `x_i x_j` for all `i < j`.
fn square_zero(n: usize) -> Vec<String> {
    let mut out: Vec<String> = (1..=n).map(|i| format!("x{i}^2")).collect();
    out.extend(products(n));
    out
}

fn products(n: usize) -> Vec<String> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(format!("x{i}*x{j}"));
        }
    }
    out
}

const ROWS: &[(usize, &[&str], &[usize], bool)] = &[
    (0, &[], &[1], true),
    (1, &["x1^2"], &[1, 1], true),
    (1, &["x1^3"], &[1, 1, 1], true),
    (2, &["x1^2", "x1*x2", "x2^2"], &[1, 2], false),
    (1, &["x1^4"], &[1, 1, 1, 1], true),
    (2, &["x1*x2", "x1^2 - x2^2"], &[1, 2, 1], true),
    (2, &["x1^3", "x1*x2", "x2^2"], &[1, 2, 1], false),
    (3, &[], &[1, 3], false),
    (1, &["x1^5"], &[1, 1, 1, 1, 1], true),
    (2, &["x1*x2", "x1^3 - x2^2"], &[1, 2, 1, 1], true),
    (2, &["x1^3", "x2^3", "x1*x2"], &[1, 2, 2], false),
    (2, &["x1^4", "x2^2", "x1*x2"], &[1, 2, 1, 1], false),
    (2, &["x1^3", "x2^2", "x1^2*x2"], &[1, 2, 2], false),
    (3, &["x1*x2", "x1*x3", "x2*x3", "x1^2 - x2^2", "x1^2 - x3^2"], &[1, 3, 1], true),
    (3, &["x1^2", "x1*x2", "x1*x3", "x2*x3", "x2^2 - x3^2"], &[1, 3, 1], false),
    (3, &["x1^3", "x2^2", "x3^2", "x1*x2", "x1*x3", "x2*x3"], &[1, 3, 1], false),
    (4, &[], &[1, 4], false),
    (1, &["x1^6"], &[1, 1, 1, 1, 1, 1], true),
    (2, &["x1*x2", "x1^4 - x2^2"], &[1, 2, 1, 1, 1], true),
    (2, &["x1*x2", "x1^3 - x2^3"], &[1, 2, 2, 1], true),
    (2, &["x1^3", "x2^2"], &[1, 2, 2, 1], true),
    (2, &["x1^5", "x1*x2", "x2^2"], &[1, 2, 1, 1, 1], false),
    (2, &["x1^4", "x1*x2", "x2^3"], &[1, 2, 2, 1], false),
    (2, &["x1^3", "x1^2*x2", "x1*x2^2", "x2^3"], &[1, 2, 3], false),
    (2, &["x1^4", "x1^2*x2", "x1^3 - x2^2"], &[1, 2, 2, 1], false),
    (2, &["x1^4", "x1^2*x2", "x2^2"], &[1, 2, 2, 1], false),
    (3, &["x1^2", "x2^2", "x3^2", "x1*x2 - x1*x3"], &[1, 3, 2], false),
    (3, &["x2^2", "x3^2", "x1*x2", "x1^2 - x2*x3"], &[1, 3, 2], false),
    (3, &["x1^2", "x2^2", "x3^2", "x2*x3"], &[1, 3, 2], false),
    (3, &["x1^2", "x2^2", "x1*x3", "x2*x3", "x1*x2 - x3^3"], &[1, 3, 1, 1], true),
    (3, &["x1^2 - x3^3", "x2^2", "x1*x2", "x1*x3", "x2*x3"], &[1, 3, 1, 1], false),
    (3, &["x1^3", "x2^2", "x3^2", "x1*x2", "x1*x3"], &[1, 3, 2], false),
    (3, &["x1^2", "x2^2", "x3^2", "x1*x2 - x1*x3 - x2*x3"], &[1, 3, 2], false),
    (3, &["x1^3", "x2^2", "x1*x3", "x2*x3", "x1*x2 - x3^2"], &[1, 3, 2], false),
    (3, &["x1^4", "x2^2", "x3^2", "x1*x2", "x1*x3", "x2*x3"], &[1, 3, 1, 1], false),
    (3, &["x1^3", "x2^3", "x3^2", "x1*x2", "x1*x3", "x2*x3"], &[1, 3, 2], false),
    (3, &["x1^3", "x2^2", "x3^2", "x1^2*x2", "x1*x3", "x2*x3"], &[1, 3, 2], false),
    (4, &[], &[1, 4, 1], true),
    (
        4,
        &["x1^2", "x2^2", "x4^2", "x1*x3", "x1*x4", "x2*x3", "x2*x4", "x3*x4", "x1*x2 - x3^2"],
        &[1, 4, 1],
        false,
    ),
    (4, &[], &[1, 4, 1], false),
    (4, &[], &[1, 4, 1], false),
    (5, &[], &[1, 5], false),
];

fn relations_for(id: usize, nvars: usize, listed: &[&str]) -> Vec<String> {
    match id {
        8 | 17 | 42 => square_zero(nvars),
        38 => {
            let mut out = Vec::new();
            for i in 1..=nvars {
                for j in i + 1..=nvars {
                    out.push(format!("x{i}^2 - x{j}^2"));
                }
            }
            out.extend(products(nvars));
            out
        }
        40 => {
            let mut out: Vec<String> = (1..=4).map(|i| format!("x{i}^2")).collect();
            out.extend(["x1*x3", "x1*x4", "x2*x3", "x2*x4", "x3*x4"].map(String::from));
            out
        }
        41 => {
            let mut out: Vec<String> = vec!["x1^3".into(), "x2^2".into(), "x3^2".into(), "x4^2".into()];
            out.extend(products(4));
            out
        }
        _ => listed.iter().map(|s| s.to_string()).collect(),
    }
}

/// All 42 rows, in order.
pub fn table1() -> Vec<CatalogEntry> {
    ROWS.iter()
        .enumerate()
        .map(|(k, &(nvars, rels, hs, gorenstein))| CatalogEntry {
            id: k + 1,
            nvars,
            relations: relations_for(k + 1, nvars, rels),
            dim: hs.iter().sum(),
            hilbert_samuel: hs.to_vec(),
            gorenstein,
        })
        .collect()
}

pub fn table1_entry(id: usize) -> Result<CatalogEntry> {
    table1().into_iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownFixture(format!("table1:{id}")))
}

/// Number of rows of each dimension `1..=6`.
pub fn counts_by_dimension() -> Vec<usize> {
    let rows = table1();
    (1..=6).map(|d| rows.iter().filter(|e| e.dim == d).count()).collect()
}

/// A named fixture.
#[derive(Clone, Debug)]
pub enum Fixture {
    Fan(Fan),
    Polytope(LatticePolytope),
    Pair(GaPair),
    HPair(HPair),
}

/// Names accepted by [`named_fixture`], with `<n>`, `<d>` and `<weights>`
/// placeholders.
pub const FIXTURE_NAMES: &[&str] = &[
    "P2",
    "Pn:<n>",
    "P1xP1",
    "P1^n:<n>",
    "Fd:<d>",
    "dP6",
    "wide-fan",
    "wps:<weights>",
    "hyp-no30",
    "quadric:<n>",
    "twisted-cubic-pair",
    "table1:<id>",
    "KS:<k>",
    "segment:<d>",
    "square",
    "cube",
    "simplex:<n>",
    "triangle",
    "trapezoid:<d>",
    "hexagon",
];

fn parse_arg<T: std::str::FromStr>(name: &str, arg: &str) -> Result<T> {
    arg.parse().map_err(|_| Error::UnknownFixture(name.to_string()))
}

/// Looks up a fixture by name.
pub fn named_fixture(name: &str) -> Result<Fixture> {
    let (head, arg) = name.split_once(':').unwrap_or((name, ""));
    let unknown = || Error::UnknownFixture(name.to_string());
    let fixture = match (head, arg.is_empty()) {
        ("P2", true) => Fixture::Fan(projective_space_fan(2)),
        ("Pn", false) => Fixture::Fan(projective_space_fan(positive(name, arg)?)),
        ("P1xP1", true) => Fixture::Fan(product_of_lines_fan(2)),
        ("P1^n", false) => Fixture::Fan(product_of_lines_fan(positive(name, arg)?)),
        ("Fd", false) => Fixture::Fan(hirzebruch_fan(parse_arg::<u32>(name, arg)? as i64)),
        ("dP6", true) => Fixture::Fan(del_pezzo6_fan()),
        ("wide-fan", true) => Fixture::Fan(wide_fan()),
        ("wps", false) => {
            let w = arg.split(',').map(|s| parse_arg::<i64>(name, s.trim())).collect::<Result<Vec<_>>>()?;
            Fixture::Fan(weighted_projective_fan(&w)?)
        }
        ("hyp-no30", true) => Fixture::HPair(hyp_no30()?),
        ("quadric", false) => Fixture::HPair(quadric_pair(positive(name, arg)?)?),
        ("twisted-cubic-pair", true) => {
            let a = Algebra::truncated_polynomial(4);
            let s = a.basis_vector(1);
            Fixture::Pair(GaPair::new(a, vec![s])?)
        }
        ("KS", false) => Fixture::Pair(GaPair::maximal(Algebra::truncated_polynomial(positive(name, arg)?))?),
        ("table1", false) => Fixture::Pair(GaPair::maximal(table1_entry(parse_arg(name, arg)?)?.algebra()?)?),
        ("segment", false) => {
            let d: i64 = positive(name, arg)? as i64;
            Fixture::Polytope(LatticePolytope::new(1, vec![vec![0], vec![d]])?)
        }
        ("square", true) => Fixture::Polytope(lp(2, &[[0, 0], [1, 0], [1, 1], [0, 1]])),
        ("cube", true) => Fixture::Polytope(
            LatticePolytope::new(3, crate::toric::box_points(&[(0, 1), (0, 1), (0, 1)])).expect("unit cube"),
        ),
        ("simplex", false) => {
            let n = positive(name, arg)?;
            let mut v = vec![vec![0; n]];
            v.extend((0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()));
            Fixture::Polytope(LatticePolytope::new(n, v)?)
        }
        ("triangle", true) => Fixture::Polytope(lp(2, &[[0, 0], [2, 0], [0, 1]])),
        ("trapezoid", false) => {
            let d: i64 = parse_arg::<u32>(name, arg)? as i64;
            Fixture::Polytope(LatticePolytope::new(2, vec![vec![0, 0], vec![d + 1, 0], vec![1, 1], vec![0, 1]])?)
        }
        ("hexagon", true) => Fixture::Polytope(lp(2, &[[0, 0], [1, 0], [2, 1], [2, 2], [1, 2], [0, 1]])),
        _ => return Err(unknown()),
    };
    Ok(fixture)
}

fn positive(name: &str, arg: &str) -> Result<usize> {
    match parse_arg::<usize>(name, arg)? {
        0 => Err(Error::UnknownFixture(name.to_string())),
        n => Ok(n),
    }
}

fn lp<const N: usize>(rank: usize, v: &[[i64; N]]) -> LatticePolytope {
    LatticePolytope::new(rank, v.iter().map(|x| x.to_vec()).collect()).expect("fixture polytope")
}

/// Rays `±e_1, ±e_2, ±(e_1 + e_2)` in angular order.
pub fn del_pezzo6_fan() -> Fan {
    let rays = vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![-1, 0], vec![-1, -1], vec![0, -1]];
    let cones = (0..6).map(|i| vec![i, (i + 1) % 6]).collect();
    Fan::new(2, rays, cones).expect("del Pezzo fan")
}

/// Rays `(1,0), (0,1), (-1,-2), (-2,-1)`.
pub fn wide_fan() -> Fan {
    Fan::new(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, -2], vec![-2, -1]],
        vec![vec![0, 1], vec![1, 3], vec![3, 2], vec![2, 0]],
    )
    .expect("wide fan")
}

/// Row 30 with `U = <S_1, S_2, S_3, S_3^2>`.
pub fn hyp_no30() -> Result<HPair> {
    let entry = table1_entry(30)?;
    let a = entry.algebra()?;
    let names = entry.names();
    let u = ["x1", "x2", "x3", "x3^2"].iter().map(|s| parse_poly(s, &names)).collect::<Result<Vec<_>>>()?;
    HPair::new(GaPair::from_polys(a, &u)?, None)
}

/// The polytope fixtures used for the fan/polytope coherence check.
pub fn coherence_polytopes() -> Vec<(&'static str, LatticePolytope)> {
    [
        "segment:1",
        "segment:3",
        "square",
        "cube",
        "simplex:2",
        "simplex:3",
        "triangle",
        "trapezoid:1",
        "trapezoid:2",
        "hexagon",
    ]
    .into_iter()
    .map(|n| match named_fixture(n) {
        Ok(Fixture::Polytope(p)) => (n, p),
        _ => unreachable!("polytope fixture {n}"),
    })
    .collect()
}
