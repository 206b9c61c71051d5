//! Pairs `(A, U)` with `U` a hyperplane in the maximal ideal, which describe
//! additive actions on projective hypersurfaces: the hypersurface equation,
//! its invariant multilinear form, reduction to the non-degenerate case, and
//! the Gorenstein criterion for non-degeneracy.

use num_traits::{One, Zero};

use crate::artin::Algebra;
use crate::error::{Error, Result};
use crate::exact::{factorial, q, QMatrix, Rational, Subspace};
use crate::ht::GaPair;
use crate::poly::{parse_poly, MonomialOrder, MultiPoly, VarNames};

/// A pair whose `U` has codimension one in the maximal ideal, with the
/// degree `d` of the hypersurface, a complement `S ∈ m^d \ U` and the
/// projection `π : m -> Q` along `U` with `π(S) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPair {
    pair: GaPair,
    degree: usize,
    complement: Vec<Rational>,
    pi: Vec<Rational>,
}

/// Result of quotienting an H-pair by the kernel of its invariant form.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub pair: HPair,
    /// Indices of the input U-basis vectors whose images form the new U-basis.
    pub kept_u: Vec<usize>,
    /// Dimension of the kernel that was factored out.
    pub kernel_dim: usize,
}

impl HPair {
    /// Builds an H-pair. Without an explicit complement, the first reduced
    /// basis vector of `m^d` outside `U` is used.
    pub fn new(pair: GaPair, complement: Option<Vec<Rational>>) -> Result<Self> {
        let a = pair.algebra();
        let chain = a.ideal_chain()?;
        let u = pair.u_subspace();
        if u.dim() + 1 != chain[1].dim() {
            return Err(Error::InvalidPair("U must be a hyperplane in the maximal ideal".into()));
        }
        let degree = (1..chain.len()).rev().find(|&k| !chain[k].is_subspace_of(&u)).expect("m is not inside U");
        let md = &chain[degree];
        let complement = match complement {
            Some(s) => {
                if s.len() != a.dim() || !md.contains(&s) || u.contains(&s) {
                    return Err(Error::InvalidPair("complement must lie in m^d and outside U".into()));
                }
                s
            }
            None => md.basis().iter().find(|v| !u.contains(v)).expect("m^d is not inside U").clone(),
        };
        let mut cols = vec![a.unit().to_vec()];
        cols.extend(pair.u_basis().iter().cloned());
        cols.push(complement.clone());
        let inv = QMatrix::from_cols(&cols, a.dim()).inverse().expect("1, U and S span A");
        let pi = inv.row(a.dim() - 1).to_vec();
        Ok(HPair { pair, degree, complement, pi })
    }

    pub fn pair(&self) -> &GaPair {
        &self.pair
    }

    pub fn algebra(&self) -> &Algebra {
        self.pair.algebra()
    }

    /// Degree `d` of the hypersurface.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn complement(&self) -> &[Rational] {
        &self.complement
    }

    /// `π(x)`: the `S`-coordinate of `x` in the basis `(1, U, S)`.
    pub fn pi(&self, x: &[Rational]) -> Rational {
        crate::exact::dot(&self.pi, x)
    }

    fn pi_sym(&self, x: &[MultiPoly]) -> MultiPoly {
        let n = x[0].nvars();
        let mut acc = MultiPoly::zero(n);
        for (c, p) in self.pi.iter().zip(x) {
            if !c.is_zero() {
                acc = &acc + &p.scale(c);
            }
        }
        acc
    }
}

/// Names `z0..z_{n+1}` for the coordinates of an H-pair equation.
pub fn equation_names(n: usize) -> VarNames {
    VarNames::indexed("z", 0, n + 2)
}

/// `z_0^d π(ln(1 + z/z_0))` in coordinates `z_0`, the U-basis coordinates
/// `z_1..z_n`, and `z_{n+1}` for the complement.
pub fn equation(h: &HPair) -> MultiPoly {
    let a = h.algebra();
    let n = h.pair.n();
    let nv = n + 2;
    let coeffs: Vec<MultiPoly> = (1..=n + 1).map(|i| MultiPoly::var(nv, i)).collect();
    let mut vectors: Vec<Vec<Rational>> = h.pair.u_basis().to_vec();
    vectors.push(h.complement.clone());
    let z = a.sym_combination(&coeffs, &vectors);
    let powers = a.sym_powers(&z);
    let d = h.degree;
    let z0 = MultiPoly::var(nv, 0);
    let mut eq = MultiPoly::zero(nv);
    for (k, p) in powers.iter().enumerate().skip(1) {
        if k > d {
            break;
        }
        let sign = if k % 2 == 1 { q(1) } else { q(-1) };
        let term = &h.pi_sym(p) * &z0.pow((d - k) as u32);
        eq = &eq + &term.scale(&(sign / q(k as i64)));
    }
    eq
}

/// Equations of the image of `z -> ln(1 + z)` in the affine chart `z_0 = 1`:
/// the components of `ln(1 + z)` along a complement of `U` in `m`. The
/// coordinates `z_1..z_{m-1}` refer to the non-unit part of the adapted
/// basis, and the complement is spanned by adapted basis vectors chosen
/// greedily.
pub fn chart_equations(p: &GaPair) -> Result<Vec<MultiPoly>> {
    let a = p.algebra();
    let m = a.dim();
    let basis = a.adapted_basis()?;
    let u = p.u_subspace();
    let picked: Vec<usize> = u.greedy_extension(&basis[1..]).into_iter().map(|i| i + 1).collect();
    let nv = m - 1;
    let coeffs: Vec<MultiPoly> = (0..nv).map(|i| MultiPoly::var(nv, i)).collect();
    let z = a.sym_combination(&coeffs, &basis[1..]);
    let log = a.sym_log_one_plus(&z);
    let mut cols = vec![a.unit().to_vec()];
    cols.extend(p.u_basis().iter().cloned());
    cols.extend(picked.iter().map(|&i| basis[i].clone()));
    let inv = QMatrix::from_cols(&cols, m).inverse().expect("1, U and complement span A");
    let first = 1 + p.n();
    Ok((first..m)
        .map(|r| {
            let mut acc = MultiPoly::zero(nv);
            for (c, x) in inv.row(r).iter().zip(&log) {
                if !c.is_zero() {
                    acc = &acc + &x.scale(c);
                }
            }
            acc
        })
        .collect())
}

/// Names `z1..z_{m-1}` for chart coordinates.
pub fn chart_names(m: usize) -> VarNames {
    VarNames::indexed("z", 1, m - 1)
}

/// The symmetric `d`-linear form
/// `F(a_1..a_d) = sum_K (-1)^k k! (d-k-1)! prod_{i∈K} c_i π(prod_{i∉K} z_i)`
/// where `a_i = c_i 1 + z_i` and `K` runs over subsets of size `k < d`.
#[derive(Clone, Debug)]
pub struct InvariantForm<'a> {
    h: &'a HPair,
}

pub fn invariant_form(h: &HPair) -> InvariantForm<'_> {
    InvariantForm { h }
}

impl InvariantForm<'_> {
    pub fn degree(&self) -> usize {
        self.h.degree
    }

    pub fn evaluate(&self, args: &[Vec<Rational>]) -> Result<Rational> {
        let d = self.h.degree;
        let a = self.h.algebra();
        if args.len() != d || args.iter().any(|v| v.len() != a.dim()) {
            return Err(Error::InvalidInput(format!("the form takes {d} vectors of length {}", a.dim())));
        }
        let split: Vec<(Rational, Vec<Rational>)> = args
            .iter()
            .map(|v| {
                let c = a.residue(v);
                let z: Vec<Rational> = v.iter().zip(a.unit()).map(|(x, u)| x - &c * u).collect();
                (c, z)
            })
            .collect();
        let mut total = Rational::zero();
        for mask in 0u32..(1 << d) {
            let k = mask.count_ones() as usize;
            if k == d {
                continue;
            }
            let mut scalar = Rational::one();
            let mut prod = a.unit().to_vec();
            for (i, (c, z)) in split.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    scalar *= c;
                } else {
                    prod = a.mul(&prod, z);
                }
            }
            if scalar.is_zero() {
                continue;
            }
            let sign = if k % 2 == 0 { q(1) } else { q(-1) };
            total += sign * factorial(k as u32) * factorial((d - k - 1) as u32) * scalar * self.h.pi(&prod);
        }
        Ok(total)
    }
}

/// `{x : F(x, z_2, .., z_d) = 0 for all z}`.
pub fn form_kernel(h: &HPair) -> Subspace {
    let a = h.algebra();
    let m = a.dim();
    let d = h.degree;
    let form = invariant_form(h);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut tuple = vec![0usize; d - 1];
    loop {
        let row: Vec<Rational> = (0..m)
            .map(|i| {
                let mut args = vec![a.basis_vector(i)];
                args.extend(tuple.iter().map(|&j| a.basis_vector(j)));
                form.evaluate(&args).expect("arguments have the right shape")
            })
            .collect();
        rows.push(row);
        // Next non-decreasing tuple.
        let Some(pos) = (0..tuple.len()).rev().find(|&p| tuple[p] + 1 < m) else { break };
        let v = tuple[pos] + 1;
        for t in tuple.iter_mut().skip(pos) {
            *t = v;
        }
    }
    Subspace::span(m, &QMatrix::from_rows(&rows, m).kernel())
}

pub fn is_nondegenerate(h: &HPair) -> bool {
    form_kernel(h).dim() == 0
}

/// Quotients by the kernel of the invariant form, which is the largest ideal
/// of `A` inside `U`.
pub fn reduce(h: &HPair) -> Result<Reduction> {
    let a = h.algebra();
    let kernel = form_kernel(h);
    let ideal = a.largest_ideal_in(&h.pair.u_subspace());
    if kernel != ideal {
        return Err(Error::Internal("form kernel differs from the largest ideal inside U".into()));
    }
    if kernel.dim() == 0 {
        return Ok(Reduction { pair: h.clone(), kept_u: (0..h.pair.n()).collect(), kernel_dim: 0 });
    }
    let quo = a.quotient(&kernel)?;
    let images: Vec<Vec<Rational>> = h.pair.u_basis().iter().map(|u| quo.project(u)).collect();
    let kept_u = Subspace::zero(quo.algebra.dim()).greedy_extension(&images);
    let u_new: Vec<Vec<Rational>> = kept_u.iter().map(|&i| images[i].clone()).collect();
    let s_new = quo.project(&h.complement);
    let pair = GaPair::new(quo.algebra, u_new)?;
    let reduced = HPair::new(pair, Some(s_new))?;
    if reduced.degree != h.degree {
        return Err(Error::Internal("reduction changed the degree".into()));
    }
    Ok(Reduction { pair: reduced, kept_u, kernel_dim: kernel.dim() })
}

/// `A` is Gorenstein, `Soc A = m^d`, and `m = U ⊕ m^d`.
pub fn gorenstein_certificate(h: &HPair) -> Result<bool> {
    let a = h.algebra();
    if !a.is_gorenstein()? {
        return Ok(false);
    }
    let md = a.maximal_ideal_power(h.degree)?;
    Ok(a.socle()? == md && md.intersection(&h.pair.u_subspace()).dim() == 0)
}

/// `A_n = Q[S_1..S_n]/(S_i^2 - S_j^2, S_i S_j)` with `U = <S_1..S_n>`, or
/// `Q[S]/(S^3)` with `U = <S>` when `n = 1`. The equation is
/// `z_0 z_{n+1} - (z_1^2 + .. + z_n^2)/2`.
pub fn quadric_pair(n: usize) -> Result<HPair> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let names = VarNames::indexed("S", 1, n);
    let mut gens = Vec::new();
    if n == 1 {
        gens.push(parse_poly("S1^3", &names)?);
    }
    for i in 0..n {
        for j in i + 1..n {
            let (si, sj) = (MultiPoly::var(n, i), MultiPoly::var(n, j));
            gens.push(&si.pow(2) - &sj.pow(2));
            gens.push(&si * &sj);
        }
    }
    let a = Algebra::from_presentation(n, &gens)?;
    let u: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(n, i)).collect();
    let pair = GaPair::from_polys(a, &u)?;
    HPair::new(pair, None)
}

/// Rank of the symmetric matrix of a quadratic form.
pub fn quadratic_rank(e: &MultiPoly) -> Result<usize> {
    if !e.is_homogeneous() || e.total_degree() != Some(2) {
        return Err(Error::NotQuadratic);
    }
    let n = e.nvars();
    let mut m = QMatrix::zeros(n, n);
    let half = Rational::new(1.into(), 2.into());
    for (exp, c) in e.terms() {
        let idx: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, exp[i] as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m[(i, i)] = c.clone();
        } else {
            m[(i, j)] = c * &half;
            m[(j, i)] = c * &half;
        }
    }
    Ok(m.rank())
}

/// True when `exp(z)` lies on the boundary divisor, that is `z^d ∈ U`.
pub fn boundary_test(h: &HPair, z: &[Rational]) -> Result<bool> {
    let a = h.algebra();
    if z.len() != a.dim() || !a.maximal_ideal()?.contains(z) {
        return Err(Error::InvalidInput("z must lie in the maximal ideal".into()));
    }
    Ok(h.pair.u_subspace().contains(&a.pow(z, h.degree as u32)))
}

/// Equation in canonical text form.
pub fn equation_text(h: &HPair) -> String {
    equation(h).to_text(MonomialOrder::GrLex, &equation_names(h.pair.n()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qf;

    fn alg(n: usize, gens: &[&str]) -> Algebra {
        let names = VarNames::indexed("S", 1, n);
        let gens: Vec<MultiPoly> = gens.iter().map(|g| parse_poly(g, &names).unwrap()).collect();
        Algebra::from_presentation(n, &gens).unwrap()
    }

    fn hpair(a: Algebra, u: &[&str]) -> HPair {
        let n = a.presentation().unwrap().nvars();
        let names = VarNames::indexed("S", 1, n);
        let u: Vec<MultiPoly> = u.iter().map(|g| parse_poly(g, &names).unwrap()).collect();
        HPair::new(GaPair::from_polys(a, &u).unwrap(), None).unwrap()
    }

    fn row30() -> HPair {
        let a = alg(3, &["S1^2", "S2^2", "S1*S3", "S2*S3", "S1*S2 - S3^3"]);
        hpair(a, &["S1", "S2", "S3", "S3^2"])
    }

    #[test]
    fn row30_equation() {
        let h = row30();
        assert_eq!(h.degree(), 3);
        assert_eq!(equation_text(&h), "z0^2*z5 - z0*z1*z2 - z0*z3*z4 + 1/3 * z3^3");
        assert!(is_nondegenerate(&h));
        assert!(gorenstein_certificate(&h).unwrap());
    }

    #[test]
    fn twisted_cubic_chart() {
        let a = Algebra::truncated_polynomial(4);
        let p = GaPair::new(a.clone(), vec![a.basis_vector(1)]).unwrap();
        let eqs = chart_equations(&p).unwrap();
        let names = chart_names(4);
        let text: Vec<String> = eqs.iter().map(|e| e.to_text(MonomialOrder::GrLex, &names)).collect();
        assert_eq!(text, vec!["-1/2 * z1^2 + z2", "1/3 * z1^3 - z1*z2 + z3"]);
    }

    #[test]
    fn form_vanishes_on_unit_and_polarizes_equation() {
        let h = row30();
        let f = invariant_form(&h);
        let one = h.algebra().unit().to_vec();
        assert_eq!(f.evaluate(&[one.clone(), one.clone(), one]).unwrap(), q(0));
        // F(w,w,w) = d! (-1)^(d-1) eq(w) with w in (1, U, S) coordinates.
        let w_coords = [q(2), q(1), qf(-1, 2), q(3), q(1), q(-2)];
        let mut cols = vec![h.algebra().unit().to_vec()];
        cols.extend(h.pair().u_basis().iter().cloned());
        cols.push(h.complement().to_vec());
        let w = QMatrix::from_cols(&cols, 6).mul_vec(&w_coords);
        let lhs = f.evaluate(&[w.clone(), w.clone(), w]).unwrap();
        let rhs = equation(&h).eval(&w_coords) * q(6);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn quadrics() {
        for n in 1..=4 {
            let h = quadric_pair(n).unwrap();
            let e = equation(&h);
            assert_eq!(quadratic_rank(&e).unwrap(), n + 2);
            assert!(is_nondegenerate(&h));
        }
        assert_eq!(equation_text(&quadric_pair(2).unwrap()), "z0*z3 - 1/2 * z1^2 - 1/2 * z2^2");
    }

    #[test]
    fn corank_one_quadrics() {
        let h = hpair(alg(2, &["S1^3", "S1*S2", "S2^2"]), &["S1", "S2"]);
        assert_eq!(quadratic_rank(&equation(&h)).unwrap(), 3);
        assert!(!is_nondegenerate(&h));
        let h = hpair(alg(1, &["S1^4"]), &["S1", "S1^3"]);
        assert_eq!(quadratic_rank(&equation(&h)).unwrap(), 3);
        assert_eq!(form_kernel(&h).dim(), 1);
        assert!(!gorenstein_certificate(&h).unwrap());
    }

    #[test]
    fn reduction_drops_square_zero_summand() {
        let a = alg(4, &["S1^2", "S2^2", "S1*S3", "S2*S3", "S1*S2 - S3^3", "S4*S1", "S4*S2", "S4*S3", "S4^2"]);
        let h = hpair(a, &["S1", "S2", "S3", "S3^2", "S4"]);
        assert!(!is_nondegenerate(&h));
        let r = reduce(&h).unwrap();
        assert_eq!(r.kernel_dim, 1);
        assert_eq!(r.kept_u, vec![0, 1, 2, 3]);
        assert_eq!(equation_text(&r.pair), equation_text(&row30()));
        assert!(is_nondegenerate(&r.pair));
    }

    #[test]
    fn boundary_points() {
        let h = quadric_pair(2).unwrap();
        let a = h.algebra();
        // z = S1: z^2 = S1^2 is not in U.
        assert!(!boundary_test(&h, &a.basis_vector(1)).unwrap());
        let s3 = a.basis_vector(3);
        assert!(boundary_test(&h, &s3).unwrap());
        assert!(boundary_test(&h, &a.unit().to_vec()).is_err());
    }

    #[test]
    fn rejects_non_hyperplanes() {
        let a = Algebra::truncated_polynomial(4);
        let p = GaPair::new(a.clone(), vec![a.basis_vector(1)]).unwrap();
        assert!(matches!(HPair::new(p, None), Err(Error::InvalidPair(_))));
        assert_eq!(quadratic_rank(&MultiPoly::var(2, 0)), Err(Error::NotQuadratic));
    }
}
