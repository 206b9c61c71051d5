//! Fans, Demazure roots, complete collections, Cox rings and the existence,
//! count and uniqueness criteria for additive actions on toric varieties.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    hermite_normal_form, is_lattice_basis, nonnegative_solution, q, smith_normal_form, QMatrix,
    Rational, ZMatrix,
};
use crate::poly::{monomials_up_to, MonomialOrder, MultiPoly, VarNames};

/// A fan in `N = Z^n`: primitive rays and maximal cones given as sorted
/// ray-index sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<i64>>,
    #[serde(rename = "max_cones")]
    cones: Vec<Vec<usize>>,
}

/// The JSON form `{"rank": n, "rays": [[..]], "max_cones": [[..]]}`.
#[derive(Clone, Debug, Deserialize)]
pub struct FanDocument {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

impl TryFrom<FanDocument> for Fan {
    type Error = Error;

    fn try_from(doc: FanDocument) -> Result<Fan> {
        Fan::new(doc.rank, doc.rays, doc.max_cones)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FanReport {
    pub is_valid: bool,
    pub is_complete: bool,
    pub is_smooth: bool,
}

/// A character `e` with `<p_ray, e> = -1` and `<p, e> >= 0` on every other ray.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DemazureRoot {
    pub ray: usize,
    pub e: Vec<i64>,
}

/// Roots of a single cone, which form an infinite set once the cone has
/// dimension at least two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineRoots {
    pub roots: Vec<DemazureRoot>,
    pub truncated: bool,
}

/// `n` roots with `<p_{basis_rays[i]}, roots[j]> = -delta_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompleteCollection {
    pub basis_rays: Vec<usize>,
    pub roots: Vec<Vec<i64>>,
}

/// The homogeneous derivation `x^exponents * d/dx_target` of the Cox ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxLnd {
    pub target: usize,
    pub exponents: Vec<u32>,
}

/// Class group `Z^free_rank + sum Z/torsion_i` of the toric variety with the
/// degree of every Cox ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxData {
    pub variables: Vec<String>,
    pub free_rank: usize,
    pub torsion: Vec<i64>,
    pub degrees: Vec<Vec<i64>>,
    pub torsion_degrees: Vec<Vec<i64>>,
}

/// The normalized tuple of derivations next to a second, non-equivalent
/// tuple in which entry `j` becomes `d_{-p_j*} + d_{-p_i* + d p_j*}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecondTuple {
    pub basis_rays: Vec<usize>,
    pub i: usize,
    pub j: usize,
    pub d: i64,
    pub normalized: Vec<Vec<CoxLnd>>,
    pub perturbed: Vec<Vec<CoxLnd>>,
}

/// A pair of cones `(sigma_1, sigma_2)` with `sigma_1` a facet of `sigma_2`.
pub type ConePair = (Vec<usize>, Vec<usize>);

pub(crate) fn pairing(p: &[i64], e: &[i64]) -> i64 {
    p.iter().zip(e).map(|(a, b)| a * b).sum()
}

fn to_q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

fn to_i64(v: &[Rational]) -> Option<Vec<i64>> {
    v.iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect()
}

/// Visits every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

impl Fan {
    /// Checks shapes, primitivity and distinctness of the rays and the cone
    /// indices. Geometric conditions are checked by [`validate_fan`].
    pub fn new(rank: usize, rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Result<Fan> {
        let bad = |m: String| Err(Error::MalformedFan(m));
        if rank == 0 {
            return bad("rank must be positive".into());
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != rank {
                return bad(format!("ray {i} has length {}, expected {rank}", r.len()));
            }
            if r.iter().all(|&x| x == 0) {
                return bad(format!("ray {i} is zero"));
            }
            if crate::exact::gcd_slice(r) != 1 {
                return bad(format!("ray {i} is not primitive"));
            }
            if rays[..i].contains(r) {
                return bad(format!("ray {i} repeats an earlier ray"));
            }
        }
        let mut sorted = Vec::with_capacity(cones.len());
        for (k, c) in cones.into_iter().enumerate() {
            let set: BTreeSet<usize> = c.iter().copied().collect();
            if set.is_empty() {
                return bad(format!("cone {k} is empty"));
            }
            if set.len() != c.len() {
                return bad(format!("cone {k} repeats a ray"));
            }
            if let Some(&i) = set.iter().find(|&&i| i >= rays.len()) {
                return bad(format!("cone {k} refers to missing ray {i}"));
            }
            sorted.push(set.into_iter().collect());
        }
        Ok(Fan { rank, rays, cones: sorted })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    fn ray_cols(&self, idx: &[usize]) -> Vec<Vec<Rational>> {
        idx.iter().map(|&i| to_q(&self.rays[i])).collect()
    }

    fn cone_rank(&self, idx: &[usize]) -> usize {
        if idx.is_empty() {
            return 0;
        }
        QMatrix::from_cols(&self.ray_cols(idx), self.rank).rank()
    }

    /// Facets of a cone together with a functional that vanishes on the facet
    /// and is positive on the remaining rays of the cone.
    fn cone_facets(&self, cone: &[usize]) -> Vec<(Vec<usize>, Vec<Rational>)> {
        let k = self.cone_rank(cone);
        if k == 0 {
            return Vec::new();
        }
        let mut out: Vec<(Vec<usize>, Vec<Rational>)> = Vec::new();
        for sub in subsets(cone.len(), k - 1) {
            let idx: Vec<usize> = sub.iter().map(|&s| cone[s]).collect();
            if self.cone_rank(&idx) != k - 1 {
                continue;
            }
            let kernel = if idx.is_empty() {
                QMatrix::identity(self.rank).row_vecs()
            } else {
                let rows: Vec<Vec<Rational>> = self.ray_cols(&idx);
                QMatrix::from_rows(&rows, self.rank).kernel()
            };
            let Some(u) = kernel.into_iter().find(|u| cone.iter().any(|&r| !crate::exact::dot(u, &to_q(&self.rays[r])).is_zero()))
            else {
                continue;
            };
            let vals: Vec<Rational> = cone.iter().map(|&r| crate::exact::dot(&u, &to_q(&self.rays[r]))).collect();
            let u = if vals.iter().all(|v| !v.is_negative()) {
                u
            } else if vals.iter().all(|v| !v.is_positive()) {
                u.iter().map(|x| -x).collect()
            } else {
                continue;
            };
            let facet: Vec<usize> = cone.iter().zip(&vals).filter(|(_, v)| v.is_zero()).map(|(&r, _)| r).collect();
            if !out.iter().any(|(f, _)| *f == facet) {
                out.push((facet, u));
            }
        }
        out
    }

    fn cone_faces(&self, cone: &[usize], into: &mut BTreeSet<Vec<usize>>) {
        if !into.insert(cone.to_vec()) {
            return;
        }
        for (facet, _) in self.cone_facets(cone) {
            self.cone_faces(&facet, into);
        }
    }

    /// Every cone of the fan as a ray-index set, the zero cone included,
    /// ordered by size and then lexicographically.
    pub fn all_cones(&self) -> Vec<Vec<usize>> {
        let mut set = BTreeSet::new();
        set.insert(Vec::new());
        for c in &self.cones {
            self.cone_faces(c, &mut set);
        }
        let mut out: Vec<Vec<usize>> = set.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    fn check_cone(&self, k: usize) -> Result<()> {
        let cone = &self.cones[k];
        let r = self.cone_rank(cone);
        if r == cone.len() {
            return Ok(());
        }
        if r != self.rank {
            return Err(Error::MalformedFan(format!("non-simplicial cone {k} must be full-dimensional")));
        }
        let mut cols = self.ray_cols(cone);
        for c in cols.iter_mut() {
            c.push(q(1));
        }
        let mut b = vec![q(0); self.rank];
        b.push(q(1));
        if nonnegative_solution(&cols, &b).is_some() {
            return Err(Error::MalformedFan(format!("cone {k} is not strongly convex")));
        }
        for (pos, &ray) in cone.iter().enumerate() {
            let others: Vec<usize> = cone.iter().enumerate().filter(|&(p, _)| p != pos).map(|(_, &r)| r).collect();
            if nonnegative_solution(&self.ray_cols(&others), &to_q(&self.rays[ray])).is_some() {
                return Err(Error::MalformedFan(format!("ray {ray} is not extremal in cone {k}")));
            }
        }
        Ok(())
    }

    /// True when `sigma` and `tau` meet along the cone spanned by their common rays,
    /// and that cone is a face of both.
    fn meet_properly(&self, sigma: &[usize], tau: &[usize]) -> bool {
        let common: Vec<usize> = sigma.iter().copied().filter(|r| tau.contains(r)).collect();
        for c in [sigma, tau] {
            let mut faces = BTreeSet::new();
            self.cone_faces(c, &mut faces);
            faces.insert(Vec::new());
            if !faces.contains(&common) {
                return false;
            }
        }
        // Functionals of the facets of sigma through the common face: their
        // sum vanishes exactly on the common face.
        let facets: Vec<Vec<Rational>> = self
            .cone_facets(sigma)
            .into_iter()
            .filter(|(f, _)| common.iter().all(|r| f.contains(r)))
            .map(|(_, u)| u)
            .collect();
        let mut cols = Vec::new();
        for &r in sigma {
            let p = to_q(&self.rays[r]);
            let w: Rational = facets.iter().map(|u| crate::exact::dot(u, &p)).sum();
            let mut col = p;
            col.push(w);
            cols.push(col);
        }
        for &r in tau {
            let mut col: Vec<Rational> = self.rays[r].iter().map(|&x| q(-x)).collect();
            col.push(q(0));
            cols.push(col);
        }
        let mut b = vec![q(0); self.rank];
        b.push(q(1));
        nonnegative_solution(&cols, &b).is_none()
    }
}

/// Checks that the cones are strongly convex and meet along common faces,
/// then reports completeness and smoothness.
pub fn validate_fan(f: &Fan) -> Result<FanReport> {
    for k in 0..f.cones.len() {
        f.check_cone(k)?;
    }
    for a in 0..f.cones.len() {
        for b in 0..f.cones.len() {
            if a != b && f.cones[a].iter().all(|r| f.cones[b].contains(r)) {
                return Err(Error::MalformedFan(format!("cone {a} is contained in cone {b}")));
            }
        }
    }
    for a in 0..f.cones.len() {
        for b in a + 1..f.cones.len() {
            if !f.meet_properly(&f.cones[a], &f.cones[b]) {
                return Err(Error::MalformedFan(format!("cones {a} and {b} do not meet along a common face")));
            }
        }
    }
    let n = f.rank;
    let mut is_complete = !f.cones.is_empty() && f.cones.iter().all(|c| f.cone_rank(c) == n);
    if is_complete {
        let mut shared: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (k, c) in f.cones.iter().enumerate() {
            for (facet, _) in f.cone_facets(c) {
                shared.entry(facet).or_default().push(k);
            }
        }
        is_complete = shared.values().all(|v| v.len() == 2);
        if is_complete {
            let mut seen = vec![false; f.cones.len()];
            let mut queue = VecDeque::from([0usize]);
            seen[0] = true;
            while let Some(k) = queue.pop_front() {
                for owners in shared.values().filter(|v| v.contains(&k)) {
                    for &o in owners {
                        if !seen[o] {
                            seen[o] = true;
                            queue.push_back(o);
                        }
                    }
                }
            }
            is_complete = seen.iter().all(|&s| s);
        }
    }
    let is_smooth = f.cones.iter().all(|c| {
        let m = ZMatrix::from_i64_rows(&c.iter().map(|&i| f.rays[i].clone()).collect::<Vec<_>>(), n);
        let snf = smith_normal_form(&m);
        snf.rank() == c.len() && snf.diagonal().iter().take(c.len()).all(|d| d.abs() == 1.into())
    });
    Ok(FanReport { is_valid: true, is_complete, is_smooth })
}

fn require_complete(f: &Fan) -> Result<()> {
    if validate_fan(f)?.is_complete {
        Ok(())
    } else {
        Err(Error::NotComplete)
    }
}

/// Bounding box of `{<p_ray, e> = -1, <p, e> >= 0 for the other rays}`,
/// or `None` when the polyhedron is empty. The polyhedron must be bounded.
fn root_box(rays: &[Vec<i64>], ray: usize, n: usize) -> Option<Vec<(i64, i64)>> {
    let others: Vec<usize> = (0..rays.len()).filter(|&k| k != ray).collect();
    let mut lo: Option<Vec<Rational>> = None;
    let mut hi: Option<Vec<Rational>> = None;
    for sub in subsets(others.len(), n - 1) {
        let mut rows = vec![to_q(&rays[ray])];
        rows.extend(sub.iter().map(|&s| to_q(&rays[others[s]])));
        let m = QMatrix::from_rows(&rows, n);
        let mut rhs = vec![q(0); n];
        rhs[0] = q(-1);
        let Some(inv) = m.inverse() else { continue };
        let v = inv.mul_vec(&rhs);
        if others.iter().any(|&k| crate::exact::dot(&to_q(&rays[k]), &v).is_negative()) {
            continue;
        }
        lo = Some(match lo {
            None => v.clone(),
            Some(l) => l.into_iter().zip(&v).map(|(a, b)| if b < &a { b.clone() } else { a }).collect(),
        });
        hi = Some(match hi {
            None => v.clone(),
            Some(h) => h.into_iter().zip(&v).map(|(a, b)| if b > &a { b.clone() } else { a }).collect(),
        });
    }
    let (lo, hi) = (lo?, hi?);
    Some(
        lo.iter()
            .zip(&hi)
            .map(|(a, b)| (a.floor().to_integer().to_i64().unwrap(), b.ceil().to_integer().to_i64().unwrap()))
            .collect(),
    )
}

/// Integer points of a box in lexicographic order.
pub(crate) fn box_points(bounds: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &(a, b) in bounds {
        let mut next = Vec::new();
        for p in &out {
            for x in a..=b {
                let mut v = p.clone();
                v.push(x);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn is_root_of(rays: &[Vec<i64>], ray: usize, e: &[i64]) -> bool {
    rays.iter().enumerate().all(|(k, p)| {
        let v = pairing(p, e);
        if k == ray {
            v == -1
        } else {
            v >= 0
        }
    })
}

/// True when `e` satisfies the ray conditions for `ray`.
pub fn is_root(f: &Fan, ray: usize, e: &[i64]) -> bool {
    ray < f.rays.len() && e.len() == f.rank && is_root_of(&f.rays, ray, e)
}

/// Whenever a cone `sigma` of the fan is orthogonal to `e`, the cone spanned
/// by `sigma` and the distinguished ray is again in the fan.
pub fn satisfies_cone_condition(f: &Fan, r: &DemazureRoot) -> bool {
    let cones = f.all_cones();
    cones.iter().filter(|c| c.iter().all(|&i| pairing(&f.rays[i], &r.e) == 0)).all(|sigma| {
        let mut want: Vec<usize> = sigma.clone();
        want.push(r.ray);
        want.sort_unstable();
        let target = f.cone_rank(&want);
        cones.iter().any(|tau| {
            want.iter().all(|i| tau.contains(i))
                && f.cone_rank(tau) == target
                && tau.iter().all(|&t| want.contains(&t) || nonnegative_solution(&f.ray_cols(&want), &to_q(&f.rays[t])).is_some())
        })
    })
}

/// All Demazure roots of a complete fan, ordered by ray and then
/// lexicographically.
pub fn demazure_roots(f: &Fan) -> Result<Vec<DemazureRoot>> {
    require_complete(f)?;
    let mut out = Vec::new();
    for ray in 0..f.rays.len() {
        let Some(bounds) = root_box(&f.rays, ray, f.rank) else { continue };
        for e in box_points(&bounds) {
            if is_root_of(&f.rays, ray, &e) {
                out.push(DemazureRoot { ray, e });
            }
        }
    }
    for r in &out {
        if !satisfies_cone_condition(f, r) {
            return Err(Error::Internal(format!("root {:?} of ray {} violates the cone condition", r.e, r.ray)));
        }
    }
    Ok(out)
}

/// Roots of the cone spanned by `rays` with max-norm at most `bound`. The
/// result is truncated when the cone has dimension at least two.
pub fn affine_cone_roots(rays: &[Vec<i64>], bound: i64) -> Result<AffineRoots> {
    let n = rays.first().map_or(0, |r| r.len());
    let fan = Fan::new(n, rays.to_vec(), vec![(0..rays.len()).collect()])?;
    validate_fan(&fan)?;
    if fan.cone_rank(&fan.cones[0]) != n {
        return Err(Error::MalformedFan("cone must be full-dimensional".into()));
    }
    let bounds = vec![(-bound, bound); n];
    let mut roots = Vec::new();
    for ray in 0..rays.len() {
        for e in box_points(&bounds) {
            if is_root_of(rays, ray, &e) {
                roots.push(DemazureRoot { ray, e });
            }
        }
    }
    Ok(AffineRoots { roots, truncated: n >= 2 })
}

impl CoxLnd {
    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    /// `x^exponents * df/dx_target`.
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        f.derivative(self.target).mul_term(&self.exponents, &q(1))
    }

    /// Text such as `x1*x2^2*d/dx4`, with variables numbered from 1.
    pub fn to_text(&self) -> String {
        let mono = VarNames::indexed("x", 1, self.nvars()).monomial(&self.exponents);
        let d = format!("d/dx{}", self.target + 1);
        if mono.is_empty() {
            d
        } else {
            format!("{mono}*{d}")
        }
    }
}

/// Text of a formal sum of derivations.
pub fn derivation_text(sum: &[CoxLnd]) -> String {
    sum.iter().map(CoxLnd::to_text).collect::<Vec<_>>().join(" + ")
}

fn apply_sum(sum: &[CoxLnd], f: &MultiPoly) -> MultiPoly {
    sum.iter().fold(MultiPoly::zero(f.nvars()), |acc, d| &acc + &d.apply(f))
}

/// True when `[a, b]` vanishes on every monomial of degree at most `max_degree`.
pub fn brackets_vanish(a: &[CoxLnd], b: &[CoxLnd], nvars: usize, max_degree: u32) -> bool {
    monomials_up_to(nvars, max_degree, MonomialOrder::GrLex).into_iter().all(|e| {
        let m = MultiPoly::monomial(e, q(1));
        let ab = apply_sum(a, &apply_sum(b, &m));
        let ba = apply_sum(b, &apply_sum(a, &m));
        (&ab - &ba).is_zero()
    })
}

/// The derivation `x^e d/dx_ray` with exponents `<p, e>` on the other rays.
pub fn root_lnd(f: &Fan, r: &DemazureRoot) -> Result<CoxLnd> {
    if !is_root(f, r.ray, &r.e) {
        return Err(Error::InvalidInput(format!("{:?} is not a root of ray {}", r.e, r.ray)));
    }
    let exponents = f
        .rays
        .iter()
        .enumerate()
        .map(|(k, p)| if k == r.ray { 0 } else { pairing(p, &r.e) as u32 })
        .collect();
    Ok(CoxLnd { target: r.ray, exponents })
}

/// Commutation criterion for root derivations: equal distinguished rays, or
/// both cross pairings zero.
pub fn lnds_commute(f: &Fan, r1: &DemazureRoot, r2: &DemazureRoot) -> bool {
    r1.ray == r2.ray || (pairing(&f.rays[r1.ray], &r2.e) == 0 && pairing(&f.rays[r2.ray], &r1.e) == 0)
}

/// The same question answered by bracketing the derivations on monomials of
/// degree at most 4.
pub fn lnds_commute_by_bracket(f: &Fan, r1: &DemazureRoot, r2: &DemazureRoot) -> Result<bool> {
    let (a, b) = (root_lnd(f, r1)?, root_lnd(f, r2)?);
    Ok(brackets_vanish(&[a], &[b], f.rays.len(), 4))
}

/// Coordinates of every ray in the basis `basis` and the dual basis
/// `p_1*..p_n*`, or `None` if `basis` is not a lattice basis.
fn basis_data(f: &Fan, basis: &[usize]) -> Option<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let vecs: Vec<Vec<i64>> = basis.iter().map(|&i| f.rays[i].clone()).collect();
    if !is_lattice_basis(&vecs, f.rank) {
        return None;
    }
    let inv = QMatrix::from_i64_rows(&vecs, f.rank).inverse()?;
    let dual: Vec<Vec<i64>> = (0..f.rank).map(|j| to_i64(&inv.col(j)).expect("unimodular inverse")).collect();
    let coords = f.rays.iter().map(|p| dual.iter().map(|d| pairing(p, d)).collect()).collect();
    Some((coords, dual))
}

/// Every complete collection, found from the ray bases in which all other
/// rays have non-positive coordinates.
pub fn complete_collections(f: &Fan) -> Result<Vec<CompleteCollection>> {
    require_complete(f)?;
    Ok(collections_unchecked(f))
}

fn collections_unchecked(f: &Fan) -> Vec<CompleteCollection> {
    let mut out = Vec::new();
    for basis in subsets(f.rays.len(), f.rank) {
        let Some((coords, dual)) = basis_data(f, &basis) else { continue };
        let ok = (0..f.rays.len()).filter(|k| !basis.contains(k)).all(|k| coords[k].iter().all(|&c| c <= 0));
        if ok {
            let roots = dual.iter().map(|d| d.iter().map(|x| -x).collect()).collect();
            out.push(CompleteCollection { basis_rays: basis, roots });
        }
    }
    out
}

pub fn has_additive_action(f: &Fan) -> Result<bool> {
    Ok(!complete_collections(f)?.is_empty())
}

/// Roots whose negation is again a root, and the rest.
pub fn root_split(f: &Fan) -> Result<(Vec<DemazureRoot>, Vec<DemazureRoot>)> {
    let roots = demazure_roots(f)?;
    let set: BTreeSet<Vec<i64>> = roots.iter().map(|r| r.e.clone()).collect();
    Ok(roots.into_iter().partition(|r| set.contains(&r.e.iter().map(|x| -x).collect::<Vec<_>>())))
}

fn first_collection(f: &Fan) -> Result<CompleteCollection> {
    complete_collections(f)?.into_iter().next().ok_or(Error::NoAdditiveAction)
}

/// Number of additive actions on a complete toric surface up to
/// equivalence: 1 for a wide fan and 2 otherwise.
pub fn surface_action_count(f: &Fan) -> Result<u32> {
    if f.rank != 2 {
        return Err(Error::NotSurface);
    }
    let c = first_collection(f)?;
    let (coords, _) = basis_data(f, &c.basis_rays).expect("collection basis");
    let alphas: Vec<(i64, i64)> =
        (0..f.rays.len()).filter(|k| !c.basis_rays.contains(k)).map(|k| (-coords[k][0], -coords[k][1])).collect();
    let wide = alphas.iter().any(|a| a.0 > a.1) && alphas.iter().any(|a| a.0 < a.1);
    Ok(if wide { 1 } else { 2 })
}

/// True when every basis ray of the first complete collection carries the
/// single root `-p_i*`.
pub fn uniqueness_check(f: &Fan) -> Result<bool> {
    let c = first_collection(f)?;
    let roots = demazure_roots(f)?;
    Ok(c.basis_rays.iter().zip(&c.roots).all(|(&ray, e)| {
        let on_ray: Vec<&DemazureRoot> = roots.iter().filter(|r| r.ray == ray).collect();
        on_ray.len() == 1 && on_ray[0].e == *e
    }))
}

/// The non-normalized tuple obtained from a root `-p_i* + d p_j*` with the
/// smallest `d`, searching pairs `(i, j)` in lexicographic order.
pub fn second_action_tuple(f: &Fan) -> Result<SecondTuple> {
    let c = first_collection(f)?;
    if uniqueness_check(f)? {
        return Err(Error::NotApplicable("the uniqueness criterion holds".into()));
    }
    let roots = demazure_roots(f)?;
    let n = f.rank;
    let dual: Vec<Vec<i64>> = c.roots.iter().map(|e| e.iter().map(|x| -x).collect()).collect();
    let mut found = None;
    'search: for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let mut best: Option<i64> = None;
            for r in roots.iter().filter(|r| r.ray == c.basis_rays[i]) {
                // r.e = -p_i* + d p_j* exactly when its dual coordinates say so.
                let coords: Vec<i64> = c.basis_rays.iter().map(|&b| pairing(&f.rays[b], &r.e)).collect();
                let d = coords[j];
                if d >= 1 && (0..n).all(|k| k == i || k == j || coords[k] == 0) && best.is_none_or(|b| d < b) {
                    best = Some(d);
                }
            }
            if let Some(d) = best {
                found = Some((i, j, d));
                break 'search;
            }
        }
    }
    let Some((i, j, d)) = found else {
        return Err(Error::NotApplicable("no root of the form -p_i* + d p_j* with d >= 1".into()));
    };
    let basic: Vec<CoxLnd> = (0..n)
        .map(|k| root_lnd(f, &DemazureRoot { ray: c.basis_rays[k], e: c.roots[k].clone() }))
        .collect::<Result<_>>()?;
    let extra_e: Vec<i64> = (0..n).map(|k| -dual[i][k] + d * dual[j][k]).collect();
    let extra = root_lnd(f, &DemazureRoot { ray: c.basis_rays[i], e: extra_e })?;
    let normalized: Vec<Vec<CoxLnd>> = basic.iter().map(|b| vec![b.clone()]).collect();
    let mut perturbed = normalized.clone();
    perturbed[j].push(extra);
    let m = f.rays.len();
    for a in 0..n {
        for b in a + 1..n {
            if !brackets_vanish(&perturbed[a], &perturbed[b], m, 4) {
                return Err(Error::NotCommuting);
            }
        }
    }
    Ok(SecondTuple { basis_rays: c.basis_rays, i, j, d, normalized, perturbed })
}

/// Class group and variable degrees. The free part of each degree is given
/// in the basis fixed by the Hermite normal form of the degree matrix.
pub fn cox_data(f: &Fan) -> Result<CoxData> {
    validate_fan(f)?;
    let m = f.rays.len();
    let p = ZMatrix::from_i64_rows(&f.rays, f.rank);
    let snf = smith_normal_form(&p);
    let r = snf.rank();
    let diag = snf.diagonal();
    let u = snf.u.to_i64_rows().ok_or_else(|| Error::Internal("class group transform overflows".into()))?;
    let free_rows: Vec<Vec<i64>> = u[r..].to_vec();
    let free = if free_rows.is_empty() {
        Vec::new()
    } else {
        hermite_normal_form(&ZMatrix::from_i64_rows(&free_rows, m))
            .to_i64_rows()
            .ok_or_else(|| Error::Internal("class group degrees overflow".into()))?
    };
    let tors: Vec<(usize, i64)> =
        (0..r).filter_map(|i| diag[i].to_i64().filter(|&d| d > 1).map(|d| (i, d))).collect();
    let degrees = (0..m).map(|k| free.iter().map(|row| row[k]).collect()).collect();
    let torsion_degrees = (0..m).map(|k| tors.iter().map(|&(i, d)| u[i][k].rem_euclid(d)).collect()).collect();
    Ok(CoxData {
        variables: (1..=m).map(|i| format!("x{i}")).collect(),
        free_rank: m - r,
        torsion: tors.iter().map(|&(_, d)| d).collect(),
        degrees,
        torsion_degrees,
    })
}

impl CoxData {
    /// True when `x^exponents` and `x_target` have the same class.
    pub fn lnd_degree_is_zero(&self, d: &CoxLnd) -> bool {
        let free_ok = (0..self.free_rank).all(|c| {
            let s: i64 = d.exponents.iter().zip(&self.degrees).map(|(&e, deg)| e as i64 * deg[c]).sum();
            s == self.degrees[d.target][c]
        });
        let tors_ok = self.torsion.iter().enumerate().all(|(c, &t)| {
            let s: i64 = d.exponents.iter().zip(&self.torsion_degrees).map(|(&e, deg)| e as i64 * deg[c]).sum();
            (s - self.torsion_degrees[d.target][c]).rem_euclid(t) == 0
        });
        free_ok && tors_ok
    }
}

/// Pairs `(sigma_1, sigma_2)` of cones with `e <= 0` on `sigma_2` and
/// `sigma_1 = sigma_2 ∩ e^perp` a facet of `sigma_2`.
pub fn he_connected_pairs(f: &Fan, r: &DemazureRoot) -> Result<Vec<ConePair>> {
    if !is_root(f, r.ray, &r.e) {
        return Err(Error::InvalidInput(format!("{:?} is not a root of ray {}", r.e, r.ray)));
    }
    validate_fan(f)?;
    let mut out = Vec::new();
    for sigma2 in f.all_cones() {
        let vals: Vec<i64> = sigma2.iter().map(|&i| pairing(&f.rays[i], &r.e)).collect();
        if vals.iter().any(|&v| v > 0) {
            continue;
        }
        let sigma1: Vec<usize> = sigma2.iter().zip(&vals).filter(|(_, &v)| v == 0).map(|(&i, _)| i).collect();
        if sigma2.is_empty() || f.cone_rank(&sigma1) + 1 != f.cone_rank(&sigma2) {
            continue;
        }
        out.push((sigma1, sigma2));
    }
    Ok(out)
}

/// Fan of `P^n`: rays `e_1..e_n, -(e_1 + .. + e_n)`, all `n`-subsets as cones.
pub fn projective_space_fan(n: usize) -> Fan {
    let mut rays: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    rays.push(vec![-1; n]);
    Fan::new(n, rays, subsets(n + 1, n)).expect("projective space fan")
}

/// Fan of `(P^1)^n`: rays `e_1..e_n, -e_1..-e_n`.
pub fn product_of_lines_fan(n: usize) -> Fan {
    let mut rays: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    rays.extend((0..n).map(|i| (0..n).map(|j| -i64::from(i == j)).collect()));
    let cones = (0u32..1 << n).map(|s| (0..n).map(|i| i + n * ((s >> i) & 1) as usize).collect()).collect();
    Fan::new(n, rays, cones).expect("product fan")
}

/// Fan of the Hirzebruch surface `F_d`: rays `(1,0), (0,1), (-1,d), (0,-1)`.
pub fn hirzebruch_fan(d: i64) -> Fan {
    Fan::new(2, vec![vec![1, 0], vec![0, 1], vec![-1, d], vec![0, -1]], vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]])
        .expect("Hirzebruch fan")
}

/// Fan of `P(a_0, .., a_n)`: images of the standard basis in
/// `Z^{n+1} / Z(a_0, .., a_n)`, made primitive, and changed by a lattice
/// automorphism taking the first ray subset that is a lattice basis to the
/// standard basis.
pub fn weighted_projective_fan(weights: &[i64]) -> Result<Fan> {
    if weights.len() < 2 {
        return Err(Error::InvalidWeights("at least two weights are required".into()));
    }
    if weights.iter().any(|&w| w <= 0) {
        return Err(Error::InvalidWeights("weights must be positive".into()));
    }
    if weights.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidWeights("weights must be sorted ascending".into()));
    }
    if crate::exact::gcd_slice(weights) != 1 {
        return Err(Error::InvalidWeights("weights must have gcd 1".into()));
    }
    let n = weights.len() - 1;
    let col: Vec<Vec<i64>> = weights.iter().map(|&w| vec![w]).collect();
    let snf = smith_normal_form(&ZMatrix::from_i64_rows(&col, 1));
    let u = snf.u.to_i64_rows().ok_or_else(|| Error::Internal("weight transform overflows".into()))?;
    let mut rays: Vec<Vec<i64>> = (0..=n)
        .map(|k| {
            let v: Vec<i64> = (1..=n).map(|i| u[i][k]).collect();
            let g = crate::exact::gcd_slice(&v);
            v.iter().map(|x| x / g).collect()
        })
        .collect();
    if let Some(basis) = subsets(n + 1, n).into_iter().find(|b| {
        is_lattice_basis(&b.iter().map(|&i| rays[i].clone()).collect::<Vec<_>>(), n)
    }) {
        // Row vectors r map to r * B^{-1}, which sends the basis rays to e_i.
        let b: Vec<Vec<i64>> = basis.iter().map(|&i| rays[i].clone()).collect();
        let inv = QMatrix::from_i64_rows(&b, n).inverse().expect("lattice basis");
        rays = rays
            .iter()
            .map(|r| {
                let row = QMatrix::from_rows(&[to_q(r)], n).mul(&inv);
                to_i64(row.row(0)).expect("unimodular change of basis")
            })
            .collect();
    }
    Fan::new(n, rays, subsets(n + 1, n))
}


#[cfg(test)]
mod tests {
    use super::*;

    fn roots_e(f: &Fan) -> Vec<Vec<i64>> {
        let mut v: Vec<Vec<i64>> = demazure_roots(f).unwrap().into_iter().map(|r| r.e).collect();
        v.sort();
        v
    }

    #[test]
    fn validation() {
        let p2 = projective_space_fan(2);
        assert_eq!(validate_fan(&p2).unwrap(), FanReport { is_valid: true, is_complete: true, is_smooth: true });
        let quadrant = Fan::new(2, vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1]]).unwrap();
        assert!(!validate_fan(&quadrant).unwrap().is_complete);
        for d in 0..4 {
            let r = validate_fan(&hirzebruch_fan(d)).unwrap();
            assert!(r.is_complete && r.is_smooth);
        }
        let overlapping = Fan::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]], vec![vec![0, 1], vec![0, 2]]).unwrap();
        assert!(matches!(validate_fan(&overlapping), Err(Error::MalformedFan(_))));
        assert!(Fan::new(2, vec![vec![2, 0]], vec![vec![0]]).is_err());
    }

    #[test]
    fn non_simplicial_cones() {
        // Fan over the faces of the octahedron's dual, the cube: six square cones.
        let f = product_of_lines_fan(3);
        let r = validate_fan(&f).unwrap();
        assert!(r.is_complete && r.is_smooth);
        let cube_rays: Vec<Vec<i64>> = box_points(&[(-1, 1), (-1, 1), (-1, 1)])
            .into_iter()
            .filter(|v| v.iter().all(|x| x.abs() == 1))
            .collect();
        let cones: Vec<Vec<usize>> = (0..3)
            .flat_map(|axis| [-1, 1].map(|s| (axis, s)))
            .map(|(axis, s)| (0..8).filter(|&i| cube_rays[i][axis] == s).collect())
            .collect();
        let f = Fan::new(3, cube_rays, cones).unwrap();
        let r = validate_fan(&f).unwrap();
        assert!(r.is_complete && !r.is_smooth);
        assert_eq!(f.all_cones().len(), 1 + 8 + 12 + 6);
    }

    #[test]
    fn hirzebruch_roots_and_collections() {
        for d in 1..5 {
            let f = hirzebruch_fan(d);
            let mut want = vec![vec![1, 0], vec![-1, 0]];
            want.extend((0..=d).map(|k| vec![k, 1]));
            want.sort();
            assert_eq!(roots_e(&f), want);
            let c = complete_collections(&f).unwrap();
            let sets: Vec<Vec<Vec<i64>>> = c.iter().map(|c| c.roots.clone()).collect();
            assert_eq!(sets, vec![vec![vec![-1, 0], vec![0, 1]], vec![vec![1, 0], vec![d, 1]]]);
        }
        assert_eq!(roots_e(&hirzebruch_fan(0)), vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn lnds() {
        let d = 3;
        let f = hirzebruch_fan(d);
        for k in 0..=d {
            let l = root_lnd(&f, &DemazureRoot { ray: 3, e: vec![k, 1] }).unwrap();
            assert_eq!(l.exponents, vec![k as u32, 1, (d - k) as u32, 0]);
            assert!(cox_data(&f).unwrap().lnd_degree_is_zero(&l));
        }
        let l = root_lnd(&f, &DemazureRoot { ray: 2, e: vec![1, 0] }).unwrap();
        assert_eq!(l.to_text(), "x1*d/dx3");
        let p2 = projective_space_fan(2);
        let a = DemazureRoot { ray: 0, e: vec![-1, 0] };
        let b = DemazureRoot { ray: 1, e: vec![0, -1] };
        let c = DemazureRoot { ray: 1, e: vec![1, -1] };
        assert!(lnds_commute(&p2, &a, &b) && lnds_commute_by_bracket(&p2, &a, &b).unwrap());
        assert!(!lnds_commute(&p2, &a, &c) && !lnds_commute_by_bracket(&p2, &a, &c).unwrap());
    }

    #[test]
    fn counts_and_uniqueness() {
        let p2 = projective_space_fan(2);
        assert_eq!(demazure_roots(&p2).unwrap().len(), 6);
        assert_eq!(surface_action_count(&p2).unwrap(), 2);
        assert_eq!(surface_action_count(&hirzebruch_fan(1)).unwrap(), 2);
        let wide = Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -2], vec![-2, -1]],
            vec![vec![0, 1], vec![1, 3], vec![3, 2], vec![2, 0]],
        )
        .unwrap();
        assert_eq!(surface_action_count(&wide).unwrap(), 1);
        assert!(uniqueness_check(&wide).unwrap());
        assert!(uniqueness_check(&product_of_lines_fan(2)).unwrap());
        assert!(!uniqueness_check(&p2).unwrap());
        assert!(!uniqueness_check(&hirzebruch_fan(2)).unwrap());
        assert_eq!(surface_action_count(&projective_space_fan(3)), Err(Error::NotSurface));
    }

    #[test]
    fn second_tuple() {
        let t = second_action_tuple(&projective_space_fan(2)).unwrap();
        let text: Vec<String> = t.perturbed.iter().map(|s| derivation_text(s)).collect();
        assert_eq!(text, vec!["x3*d/dx1", "x3*d/dx2 + x2*d/dx1"]);
        assert_eq!(t.d, 1);
        assert!(matches!(second_action_tuple(&product_of_lines_fan(2)), Err(Error::NotApplicable(_))));
        assert_eq!(second_action_tuple(&hirzebruch_fan(1)).unwrap().d, 1);
    }

    #[test]
    fn cox_degrees() {
        let f = hirzebruch_fan(3);
        let c = cox_data(&f).unwrap();
        assert_eq!(c.degrees, vec![vec![1, 0], vec![0, 1], vec![1, 0], vec![3, 1]]);
        assert!(c.torsion.is_empty());
        assert_eq!(cox_data(&projective_space_fan(2)).unwrap().degrees, vec![vec![1], vec![1], vec![1]]);
        let w = cox_data(&weighted_projective_fan(&[1, 1, 2]).unwrap()).unwrap();
        assert_eq!(w.degrees, vec![vec![1], vec![1], vec![2]]);
    }

    #[test]
    fn weighted() {
        let f = weighted_projective_fan(&[1, 1, 2]).unwrap();
        assert_eq!(f.rays(), &[vec![1, 0], vec![-1, -2], vec![0, 1]]);
        assert!(has_additive_action(&f).unwrap());
        assert!(!has_additive_action(&weighted_projective_fan(&[2, 3, 5]).unwrap()).unwrap());
        assert_eq!(weighted_projective_fan(&[1, 1, 1]).unwrap().rays(), projective_space_fan(2).rays());
        assert!(matches!(weighted_projective_fan(&[2, 4]), Err(Error::InvalidWeights(_))));
    }

    #[test]
    fn affine_roots_and_pairs() {
        let quad = affine_cone_roots(&[vec![1, 0], vec![0, 1]], 2).unwrap();
        assert_eq!(quad.roots.len(), 6);
        assert!(quad.truncated);
        let line = affine_cone_roots(&[vec![1]], 5).unwrap();
        assert_eq!(line.roots, vec![DemazureRoot { ray: 0, e: vec![-1] }]);
        assert!(!line.truncated);
        let p2 = projective_space_fan(2);
        let pairs = he_connected_pairs(&p2, &DemazureRoot { ray: 0, e: vec![-1, 0] }).unwrap();
        assert_eq!(pairs, vec![(vec![], vec![0]), (vec![1], vec![0, 1])]);
        let (s, u) = root_split(&hirzebruch_fan(2)).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(u.len(), 3);
    }
}
