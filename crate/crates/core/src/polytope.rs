//! Lattice polytopes: facets, normal fans, lattice points, a bounded very
//! ampleness check and the inscribed-in-a-rectangle criterion.

use std::collections::BTreeSet;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{gcd_slice, hermite_normal_form, is_lattice_basis, nonnegative_solution, primitive_integer, q, QMatrix, Rational, ZMatrix};
use crate::toric::{box_points, pairing, subsets, Fan};

/// A full-dimensional lattice polytope given by its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePolytope {
    rank: usize,
    vertices: Vec<Vec<i64>>,
}

/// The JSON form `{"rank": n, "vertices": [[..]]}`.
#[derive(Clone, Debug, Deserialize)]
pub struct PolytopeDocument {
    pub rank: usize,
    pub vertices: Vec<Vec<i64>>,
}

impl TryFrom<PolytopeDocument> for LatticePolytope {
    type Error = Error;

    fn try_from(doc: PolytopeDocument) -> Result<LatticePolytope> {
        LatticePolytope::new(doc.rank, doc.vertices)
    }
}

/// The inequality `<normal, x> <= offset` with a primitive outer normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn contains(&self, x: &[i64]) -> bool {
        pairing(&self.normal, x) == self.offset
    }
}

/// Outcome of the bounded very ampleness check. Failure is never claimed:
/// a saturation defect only yields the hint that `kP` is very ample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "k", rename_all = "snake_case")]
pub enum VeryAmple {
    Verified,
    VerifiedByTheorem,
    DilateHint(usize),
    Inconclusive,
}

fn to_q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl LatticePolytope {
    /// Checks that the vertices are distinct extreme points spanning a
    /// full-dimensional polytope.
    pub fn new(rank: usize, vertices: Vec<Vec<i64>>) -> Result<LatticePolytope> {
        if rank == 0 {
            return Err(Error::InvalidPolytope("rank must be positive".into()));
        }
        if let Some(v) = vertices.iter().find(|v| v.len() != rank) {
            return Err(Error::InvalidPolytope(format!("vertex {v:?} does not have length {rank}")));
        }
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::InvalidPolytope(format!("vertex {v:?} is repeated")));
            }
        }
        if vertices.is_empty() {
            return Err(Error::NotFullDimensional);
        }
        let diffs: Vec<Vec<Rational>> = vertices[1..].iter().map(|v| to_q(&sub(v, &vertices[0]))).collect();
        if QMatrix::from_rows(&diffs, rank).rank() != rank {
            return Err(Error::NotFullDimensional);
        }
        for (i, v) in vertices.iter().enumerate() {
            // v is a convex combination of the others exactly when a
            // non-negative solution with weights summing to one exists.
            let cols: Vec<Vec<Rational>> = vertices
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, w)| {
                    let mut c = to_q(w);
                    c.push(q(1));
                    c
                })
                .collect();
            let mut b = to_q(v);
            b.push(q(1));
            if nonnegative_solution(&cols, &b).is_some() {
                return Err(Error::InvalidPolytope(format!("{v:?} is not a vertex of the hull")));
            }
        }
        Ok(LatticePolytope { rank, vertices })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    /// `k P`.
    pub fn dilate(&self, k: i64) -> Result<LatticePolytope> {
        LatticePolytope::new(self.rank, self.vertices.iter().map(|v| v.iter().map(|x| k * x).collect()).collect())
    }

    /// Image under `x -> x * g + t` for an integer matrix `g` acting on row vectors.
    pub fn transform(&self, g: &[Vec<i64>], t: &[i64]) -> Result<LatticePolytope> {
        let n = self.rank;
        let vertices = self
            .vertices
            .iter()
            .map(|v| (0..n).map(|j| (0..n).map(|i| v[i] * g[i][j]).sum::<i64>() + t[j]).collect())
            .collect();
        LatticePolytope::new(n, vertices)
    }
}

/// Irredundant facet inequalities, sorted by normal and offset.
pub fn facets(p: &LatticePolytope) -> Vec<Facet> {
    let n = p.rank;
    let mut out = BTreeSet::new();
    for s in subsets(p.vertices.len(), n) {
        let base = &p.vertices[s[0]];
        let rows: Vec<Vec<Rational>> = s[1..].iter().map(|&i| to_q(&sub(&p.vertices[i], base))).collect();
        let kernel = if rows.is_empty() { QMatrix::identity(n).row_vecs() } else { QMatrix::from_rows(&rows, n).kernel() };
        if kernel.len() != 1 {
            continue;
        }
        let u = primitive_integer(&kernel[0]);
        for normal in [u.clone(), u.iter().map(|x| -x).collect::<Vec<i64>>()] {
            let offset = pairing(&normal, base);
            if p.vertices.iter().all(|v| pairing(&normal, v) <= offset) {
                out.insert(Facet { normal, offset });
            }
        }
    }
    out.into_iter().collect()
}

/// Vertices of the polyhedron cut out by the facets, recovered by
/// intersecting every `n` of them.
pub fn facet_vertices(rank: usize, fs: &[Facet]) -> Vec<Vec<i64>> {
    let mut out = BTreeSet::new();
    for s in subsets(fs.len(), rank) {
        let rows: Vec<Vec<Rational>> = s.iter().map(|&i| to_q(&fs[i].normal)).collect();
        let Some(inv) = QMatrix::from_rows(&rows, rank).inverse() else { continue };
        let rhs: Vec<Rational> = s.iter().map(|&i| q(fs[i].offset)).collect();
        let x = inv.mul_vec(&rhs);
        let inside = fs.iter().all(|f| crate::exact::dot(&to_q(&f.normal), &x) <= q(f.offset));
        if inside && x.iter().all(|c| c.is_integer()) {
            out.insert(x.iter().map(|c| c.to_integer().to_i64().expect("vertex coordinate")).collect::<Vec<i64>>());
        }
    }
    out.into_iter().collect()
}

/// Inner facet normals as rays, one maximal cone per vertex.
pub fn normal_fan(p: &LatticePolytope) -> Fan {
    let fs = facets(p);
    let rays: Vec<Vec<i64>> = fs.iter().map(|f| f.normal.iter().map(|x| -x).collect()).collect();
    let cones = p.vertices.iter().map(|v| (0..fs.len()).filter(|&i| fs[i].contains(v)).collect()).collect();
    Fan::new(p.rank, rays, cones).expect("normal fan of a valid polytope")
}

/// All lattice points in lexicographic order.
pub fn lattice_points(p: &LatticePolytope) -> Vec<Vec<i64>> {
    let fs = facets(p);
    let bounds: Vec<(i64, i64)> = (0..p.rank)
        .map(|i| {
            let xs = p.vertices.iter().map(|v| v[i]);
            (xs.clone().min().unwrap(), xs.max().unwrap())
        })
        .collect();
    box_points(&bounds).into_iter().filter(|x| fs.iter().all(|f| pairing(&f.normal, x) <= f.offset)).collect()
}

/// Vertices joined to `v` by an edge.
fn neighbours(p: &LatticePolytope, fs: &[Facet], v: usize) -> Vec<usize> {
    let at_v: Vec<&Facet> = fs.iter().filter(|f| f.contains(&p.vertices[v])).collect();
    (0..p.vertices.len())
        .filter(|&w| w != v)
        .filter(|&w| {
            let common: Vec<Vec<Rational>> =
                at_v.iter().filter(|f| f.contains(&p.vertices[w])).map(|f| to_q(&f.normal)).collect();
            let r = if common.is_empty() { 0 } else { QMatrix::from_rows(&common, p.rank).rank() };
            r == p.rank - 1
        })
        .collect()
}

/// First vertex whose primitive edge directions form a lattice basis and
/// pair non-negatively with the outer normal of every facet avoiding it.
pub fn inscribed_in_rectangle(p: &LatticePolytope) -> Option<Vec<i64>> {
    let fs = facets(p);
    let n = p.rank;
    (0..p.vertices.len())
        .find(|&v| {
            let v0 = &p.vertices[v];
            let edges: Vec<Vec<i64>> = neighbours(p, &fs, v)
                .into_iter()
                .map(|w| {
                    let d = sub(&p.vertices[w], v0);
                    let g = gcd_slice(&d);
                    d.iter().map(|x| x / g).collect()
                })
                .collect();
            is_lattice_basis(&edges, n)
                && fs.iter().filter(|f| !f.contains(v0)).all(|f| edges.iter().all(|e| pairing(&f.normal, e) >= 0))
        })
        .map(|v| p.vertices[v].clone())
}

/// Largest `g` with `P - v_0 = g Q` for a lattice polytope `Q`.
fn dilation_factor(p: &LatticePolytope) -> i64 {
    let diffs: Vec<i64> = p.vertices.iter().flat_map(|v| sub(v, &p.vertices[0])).collect();
    gcd_slice(&diffs).abs()
}

/// Checks that every vertex semigroup `Z_{>=0}(P ∩ M - v)` is saturated. For
/// each simplicial cone on `n` generators, the lattice points of its
/// half-open parallelepiped in the generated group must lie in the
/// semigroup; these cones cover the vertex cone, so the test is exact when
/// it completes. `search_bound` caps the number of scanned points.
pub fn very_ample_bounded(p: &LatticePolytope, search_bound: usize) -> VeryAmple {
    let n = p.rank;
    if n >= 3 && dilation_factor(p) >= (n - 1) as i64 {
        return VeryAmple::VerifiedByTheorem;
    }
    let points = lattice_points(p);
    let mut budget = search_bound;
    for v in &p.vertices {
        let gens: Vec<Vec<i64>> = points.iter().filter(|x| *x != v).map(|x| sub(x, v)).collect();
        match vertex_saturated(&gens, n, &mut budget) {
            Some(true) => {}
            Some(false) => return VeryAmple::DilateHint(n.saturating_sub(1).max(1)),
            None => {
                return if dilation_factor(p) >= n.saturating_sub(1) as i64 {
                    VeryAmple::VerifiedByTheorem
                } else {
                    VeryAmple::Inconclusive
                }
            }
        }
    }
    VeryAmple::Verified
}

/// `Some(saturated)` or `None` once the budget runs out.
fn vertex_saturated(gens: &[Vec<i64>], n: usize, budget: &mut usize) -> Option<bool> {
    let lattice = hermite_normal_form(&ZMatrix::from_i64_rows(gens, n));
    let lattice_q = lattice.to_rational();
    let in_lattice = |x: &[i64]| -> bool {
        // Row-echelon with positive pivots: solve by back substitution.
        let mut rest: Vec<Rational> = to_q(x);
        for r in 0..lattice_q.rows() {
            let row = lattice_q.row(r);
            let Some(piv) = row.iter().position(|c| !c.is_zero()) else { continue };
            let c = &rest[piv] / &row[piv];
            if !c.is_integer() {
                return false;
            }
            for (k, rk) in row.iter().enumerate() {
                rest[k] = &rest[k] - &c * rk;
            }
        }
        rest.iter().all(|c| c.is_zero())
    };
    // A functional positive on the cone away from 0 bounds the search for
    // representations.
    let cone_cols: Vec<Vec<Rational>> = gens.iter().map(|g| to_q(g)).collect();
    let weight = positive_functional(&cone_cols, n)?;
    let mut memo = std::collections::HashMap::new();
    for s in subsets(gens.len(), n) {
        let cols: Vec<Vec<Rational>> = s.iter().map(|&i| to_q(&gens[i])).collect();
        let m = QMatrix::from_cols(&cols, n);
        let Some(inv) = m.inverse() else { continue };
        let mut lo = vec![0i64; n];
        let mut hi = vec![0i64; n];
        for &i in &s {
            for k in 0..n {
                let g = gens[i][k];
                if g < 0 {
                    lo[k] += g;
                } else {
                    hi[k] += g;
                }
            }
        }
        let bounds: Vec<(i64, i64)> = lo.into_iter().zip(hi).collect();
        let size: usize = bounds.iter().map(|(a, b)| (b - a + 1) as usize).product();
        if size > *budget {
            return None;
        }
        *budget -= size;
        for x in box_points(&bounds) {
            let lambda = inv.mul_vec(&to_q(&x));
            if lambda.iter().any(|c| c.is_negative() || *c >= q(1)) || !in_lattice(&x) {
                continue;
            }
            if !in_semigroup(&x, gens, &weight, &mut memo) {
                return Some(false);
            }
        }
    }
    Some(true)
}

/// An integer functional positive on every generator, if the cone is pointed.
fn positive_functional(cols: &[Vec<Rational>], n: usize) -> Option<Vec<i64>> {
    // Sum of the inner normals of the cone's facets.
    let mut acc = vec![0i64; n];
    for s in subsets(cols.len(), n - 1) {
        let rows: Vec<Vec<Rational>> = s.iter().map(|&i| cols[i].clone()).collect();
        let kernel = if rows.is_empty() { QMatrix::identity(n).row_vecs() } else { QMatrix::from_rows(&rows, n).kernel() };
        if kernel.len() != 1 {
            continue;
        }
        let u = primitive_integer(&kernel[0]);
        for sign in [1, -1] {
            let w: Vec<i64> = u.iter().map(|x| sign * x).collect();
            if cols.iter().all(|c| !crate::exact::dot(&to_q(&w), c).is_negative()) {
                for (a, b) in acc.iter_mut().zip(&w) {
                    *a += b;
                }
            }
        }
    }
    let ok = cols.iter().all(|c| crate::exact::dot(&to_q(&acc), c).is_positive());
    ok.then_some(acc)
}

fn in_semigroup(
    x: &[i64],
    gens: &[Vec<i64>],
    weight: &[i64],
    memo: &mut std::collections::HashMap<Vec<i64>, bool>,
) -> bool {
    if x.iter().all(|&c| c == 0) {
        return true;
    }
    if pairing(weight, x) <= 0 {
        return false;
    }
    if let Some(&r) = memo.get(x) {
        return r;
    }
    let r = gens.iter().any(|g| in_semigroup(&sub(x, g), gens, weight, memo));
    memo.insert(x.to_vec(), r);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::{has_additive_action, validate_fan};

    fn poly(rank: usize, v: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::new(rank, v.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    #[test]
    fn facet_systems() {
        let seg = poly(1, &[&[0], &[3]]);
        assert_eq!(facets(&seg), vec![Facet { normal: vec![-1], offset: 0 }, Facet { normal: vec![1], offset: 3 }]);
        let tri = poly(2, &[&[0, 0], &[2, 0], &[0, 1]]);
        assert_eq!(
            facets(&tri),
            vec![
                Facet { normal: vec![-1, 0], offset: 0 },
                Facet { normal: vec![0, -1], offset: 0 },
                Facet { normal: vec![1, 2], offset: 2 }
            ]
        );
        assert_eq!(facet_vertices(2, &facets(&tri)), vec![vec![0, 0], vec![0, 1], vec![2, 0]]);
        assert_eq!(facets(&poly(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]])).len(), 4);
    }

    #[test]
    fn invalid_polytopes() {
        assert_eq!(LatticePolytope::new(2, vec![vec![0, 0], vec![1, 1]]), Err(Error::NotFullDimensional));
        assert!(matches!(
            LatticePolytope::new(2, vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![1, 1]]),
            Err(Error::InvalidPolytope(_))
        ));
    }

    #[test]
    fn normal_fans_and_points() {
        let square = poly(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        let f = normal_fan(&square);
        assert!(validate_fan(&f).unwrap().is_complete);
        assert_eq!(f.rays().len(), 4);
        let simplex = poly(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        let mut rays = normal_fan(&simplex).rays().to_vec();
        rays.sort();
        assert_eq!(rays, vec![vec![-1, -1], vec![0, 1], vec![1, 0]]);
        assert_eq!(lattice_points(&poly(1, &[&[0], &[3]])), vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(
            lattice_points(&poly(2, &[&[0, 0], &[2, 0], &[0, 1]])),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![2, 0]]
        );
    }

    #[test]
    fn rectangles() {
        assert_eq!(inscribed_in_rectangle(&poly(1, &[&[0], &[4]])), Some(vec![0]));
        assert_eq!(inscribed_in_rectangle(&poly(2, &[&[0, 0], &[2, 0], &[0, 1]])), Some(vec![0, 0]));
        let hexagon = poly(2, &[&[0, 0], &[1, 0], &[2, 1], &[2, 2], &[1, 2], &[0, 1]]);
        assert_eq!(inscribed_in_rectangle(&hexagon), None);
        assert!(!has_additive_action(&normal_fan(&hexagon)).unwrap());
    }

    #[test]
    fn very_ample() {
        assert_eq!(very_ample_bounded(&poly(1, &[&[0], &[5]]), 10_000), VeryAmple::Verified);
        let tri = poly(2, &[&[0, 0], &[2, 0], &[0, 1]]);
        assert_eq!(very_ample_bounded(&tri, 10_000), VeryAmple::Verified);
        let simplex3 = poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(very_ample_bounded(&simplex3, 100_000), VeryAmple::Verified);
        assert_eq!(very_ample_bounded(&simplex3.dilate(2).unwrap(), 10), VeryAmple::VerifiedByTheorem);
        // Reeve tetrahedron: not normal, but each vertex semigroup is saturated in the group it generates.
        let reeve = poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 3]]);
        assert_eq!(very_ample_bounded(&reeve, 100_000), VeryAmple::Verified);
    }
}
