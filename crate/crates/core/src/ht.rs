//! Pairs `(A, U)` of a local algebra and a generating subspace of its
//! maximal ideal, the ideals and translation-invariant polynomial subspaces
//! they determine, and the induced additive action on `P(A)`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::artin::{basis_vector, Algebra, SymElement};
use crate::error::{Error, Result};
use crate::exact::{q, QMatrix, Rational, Subspace};
use crate::poly::{
    divides, exponent_factorial, monomials_of_degree, monomials_up_to, pairing, Exponent, GroebnerBasis,
    MonomialOrder, MultiPoly, VarNames,
};

/// A local algebra together with an ordered basis `s_1..s_n` of a subspace
/// `U ⊆ m` that generates the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaPair {
    algebra: Algebra,
    u_basis: Vec<Vec<Rational>>,
}

impl GaPair {
    /// Validates and builds a pair from coordinate vectors.
    pub fn new(algebra: Algebra, u_basis: Vec<Vec<Rational>>) -> Result<Self> {
        check_pair(&algebra, &u_basis)?;
        Ok(GaPair { algebra, u_basis })
    }

    /// Builds a pair from polynomials in the presentation variables.
    pub fn from_polys(algebra: Algebra, u_polys: &[MultiPoly]) -> Result<Self> {
        let u = u_polys.iter().map(|f| algebra.element_of_poly(f)).collect::<Result<Vec<_>>>()?;
        Self::new(algebra, u)
    }

    /// The pair `(A, m)` with the non-unit part of the adapted basis.
    pub fn maximal(algebra: Algebra) -> Result<Self> {
        let basis = algebra.adapted_basis()?;
        Self::new(algebra, basis[1..].to_vec())
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn u_basis(&self) -> &[Vec<Rational>] {
        &self.u_basis
    }

    /// `dim U`.
    pub fn n(&self) -> usize {
        self.u_basis.len()
    }

    pub fn u_subspace(&self) -> Subspace {
        Subspace::span(self.algebra.dim(), &self.u_basis)
    }

    /// `exp(sum t_i s_i)` where `t` are symbolic coefficients.
    pub fn exp_symbolic(&self, t: &[MultiPoly]) -> SymElement {
        let z = self.algebra.sym_combination(t, &self.u_basis);
        self.algebra.sym_exp(&z)
    }
}

fn check_pair(a: &Algebra, u: &[Vec<Rational>]) -> Result<()> {
    if u.iter().any(|v| v.len() != a.dim()) {
        return Err(Error::InvalidInput("U-basis vector has the wrong length".into()));
    }
    let m = a.maximal_ideal()?;
    if !u.iter().all(|v| m.contains(v)) {
        return Err(Error::InvalidPair("U is not contained in the maximal ideal".into()));
    }
    let span = Subspace::span(a.dim(), u);
    if span.dim() != u.len() {
        return Err(Error::InvalidPair("U-basis is linearly dependent".into()));
    }
    // U generates A exactly when U + m^2 = m.
    let m2 = a.product(&m, &m);
    if span.sum(&m2) != m {
        return Err(Error::InvalidPair("U does not generate the algebra".into()));
    }
    Ok(())
}

/// True when `u` spans a subspace of the maximal ideal that generates `a`.
pub fn validate_pair(a: &Algebra, u: &[Vec<Rational>]) -> bool {
    check_pair(a, u).is_ok()
}

/// Translation-invariant subspace of `Q[x_1..x_n]` in canonical form: the
/// reduced row echelon basis with monomials listed in basis order, so the
/// lowest-degree term of each basis polynomial is its pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingSubspace {
    nvars: usize,
    basis: Vec<MultiPoly>,
}

impl GeneratingSubspace {
    /// Span of the given polynomials in canonical form.
    pub fn span(nvars: usize, polys: &[MultiPoly]) -> Self {
        let order = MonomialOrder::GrLex;
        let mut monos: Vec<Exponent> = polys.iter().flat_map(|p| p.terms().map(|(e, _)| e.clone())).collect();
        monos.sort_by(|a, b| order.basis_cmp(a, b));
        monos.dedup();
        let index: HashMap<&Exponent, usize> = monos.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let rows: Vec<Vec<Rational>> = polys
            .iter()
            .map(|p| {
                let mut v = vec![Rational::zero(); monos.len()];
                for (e, c) in p.terms() {
                    v[index[e]] = c.clone();
                }
                v
            })
            .collect();
        let s = Subspace::span(monos.len(), &rows);
        let basis = s
            .basis()
            .iter()
            .map(|v| MultiPoly::from_terms(nvars, monos.iter().cloned().zip(v.iter().cloned())))
            .collect();
        GeneratingSubspace { nvars, basis }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
    }

    pub fn max_degree(&self) -> u32 {
        self.basis.iter().filter_map(MultiPoly::total_degree).max().unwrap_or(0)
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        let mut polys = self.basis.clone();
        polys.push(f.clone());
        GeneratingSubspace::span(self.nvars, &polys).dim() == self.dim()
    }

    /// Closed under all partial derivatives.
    pub fn is_translation_invariant(&self) -> bool {
        self.basis.iter().all(|f| (0..self.nvars).all(|i| self.contains(&f.derivative(i))))
    }

    /// No non-zero linear form `sum c_i ∂_i` kills every element.
    pub fn is_generating(&self) -> bool {
        // Rows: coefficients of ∂_i f over all f, indexed by monomial.
        let mut cols: Vec<Vec<MultiPoly>> = Vec::new();
        for i in 0..self.nvars {
            cols.push(self.basis.iter().map(|f| f.derivative(i)).collect());
        }
        let mut monos: Vec<Exponent> = Vec::new();
        for col in &cols {
            for p in col {
                monos.extend(p.terms().map(|(e, _)| e.clone()));
            }
        }
        monos.sort();
        monos.dedup();
        let nrows = monos.len() * self.basis.len();
        let mut m = QMatrix::zeros(nrows, self.nvars);
        for (i, col) in cols.iter().enumerate() {
            for (k, p) in col.iter().enumerate() {
                for (e, c) in p.terms() {
                    let r = k * monos.len() + monos.binary_search(e).unwrap();
                    m[(r, i)] = c.clone();
                }
            }
        }
        m.rank() == self.nvars
    }

    /// Span of all derivatives `∂^a f`.
    pub fn derivative_closure(nvars: usize, f: &MultiPoly) -> GeneratingSubspace {
        let d = f.total_degree().unwrap_or(0);
        let polys: Vec<MultiPoly> = (0..=d)
            .flat_map(|k| monomials_of_degree(nvars, k))
            .map(|a| f.derivative_multi(&a))
            .filter(|p| !p.is_zero())
            .collect();
        GeneratingSubspace::span(nvars, &polys)
    }

    pub fn to_text(&self, names: &VarNames) -> Vec<String> {
        self.basis.iter().map(|p| p.to_text(MonomialOrder::GrLex, names)).collect()
    }
}

/// Builds the reduced Gröbner basis of the kernel of a linear map defined on
/// monomials, assuming the kernel is an ideal containing every monomial of
/// degree `max_degree`. Monomials are visited in increasing order; each one
/// either becomes standard or yields a basis element `mu - (standard part)`.
fn kernel_ideal(
    nvars: usize,
    max_degree: u32,
    order: MonomialOrder,
    mut image: impl FnMut(&Exponent) -> Vec<Rational>,
) -> (GroebnerBasis, Vec<Exponent>) {
    let mut monos: Vec<Exponent> = (0..=max_degree).flat_map(|k| monomials_of_degree(nvars, k)).collect();
    monos.sort_by(|a, b| order.cmp(a, b));
    let mut leads: Vec<Exponent> = Vec::new();
    let mut gens: Vec<MultiPoly> = Vec::new();
    let mut standard: Vec<Exponent> = Vec::new();
    // Echelon rows: reduced image vector, pivot, and the polynomial mapping to it.
    let mut rows: Vec<(Vec<Rational>, usize, MultiPoly)> = Vec::new();
    for mu in monos {
        if leads.iter().any(|l| divides(l, &mu)) {
            continue;
        }
        let mut v = image(&mu);
        let mut combo = MultiPoly::monomial(mu.clone(), Rational::one());
        for (r, p, poly) in &rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = &v[*p] / &r[*p];
            for (x, y) in v.iter_mut().zip(r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            combo = &combo - &poly.scale(&f);
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => {
                leads.push(mu);
                gens.push(combo);
            }
            Some(p) => {
                standard.push(mu);
                rows.push((v, p, combo));
            }
        }
    }
    standard.sort_by(|a, b| order.basis_cmp(a, b));
    (GroebnerBasis::from_reduced(nvars, order, gens), standard)
}

/// Kernel of `Q[S_1..S_n] -> A`, `S_i -> s_i`, as a reduced Gröbner basis.
pub fn ideal_from_pair(p: &GaPair) -> Result<GroebnerBasis> {
    let a = &p.algebra;
    let n = p.n();
    let l = a.nilpotency_index()? as u32;
    let mut cache: HashMap<Exponent, Vec<Rational>> = HashMap::new();
    cache.insert(vec![0; n], a.unit().to_vec());
    fn image_of(
        mu: &Exponent,
        a: &Algebra,
        u: &[Vec<Rational>],
        cache: &mut HashMap<Exponent, Vec<Rational>>,
    ) -> Vec<Rational> {
        if let Some(v) = cache.get(mu) {
            return v.clone();
        }
        let i = mu.iter().position(|&k| k > 0).expect("non-unit monomial");
        let mut prev = mu.clone();
        prev[i] -= 1;
        let v = a.mul(&image_of(&prev, a, u, cache), &u[i]);
        cache.insert(mu.clone(), v.clone());
        v
    }
    let (gb, standard) =
        kernel_ideal(n, l, MonomialOrder::GrLex, |mu| image_of(mu, a, &p.u_basis, &mut cache));
    if standard.len() != a.dim() {
        return Err(Error::Internal("quotient dimension does not match the algebra".into()));
    }
    Ok(gb)
}

/// Span of the coefficients `f_i` in `exp(x_1 s_1 + .. + x_n s_n) = sum f_i e_i`.
pub fn generating_subspace(p: &GaPair) -> GeneratingSubspace {
    let n = p.n();
    let x: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(n, i)).collect();
    let e = p.exp_symbolic(&x);
    GeneratingSubspace::span(n, &e)
}

fn quotient_checks(gb: &GroebnerBasis) -> Result<Algebra> {
    let a = Algebra::from_groebner(gb.clone())?;
    let n = gb.nvars();
    for i in 0..n {
        if !a.is_nilpotent(&a.element_of_poly(&MultiPoly::var(n, i))?) {
            return Err(Error::NotSupportedAtOrigin);
        }
    }
    Ok(a)
}

/// Polynomials dual to the standard monomials of `I`:
/// `f_j = sum_mu [NF(mu)]_j x^mu / mu!`, so that `<mu_i|f_j> = δ_ij`.
pub fn dual_basis(gb: &GroebnerBasis) -> Result<Vec<MultiPoly>> {
    let a = quotient_checks(gb)?;
    let n = gb.nvars();
    let l = a.nilpotency_index()? as u32;
    let mut out = vec![MultiPoly::zero(n); a.dim()];
    for mu in monomials_up_to(n, l.saturating_sub(1), gb.order()) {
        let nf = a.element_of_poly(&MultiPoly::monomial(mu.clone(), Rational::one()))?;
        let w = exponent_factorial(&mu).recip();
        for (f, c) in out.iter_mut().zip(&nf) {
            if !c.is_zero() {
                f.add_term(mu.clone(), c * &w);
            }
        }
    }
    Ok(out)
}

/// `V_I = {f : <g|f> = 0 for all g in I}` for a non-degenerate ideal of
/// finite codimension supported at the origin.
pub fn v_from_ideal(gb: &GroebnerBasis) -> Result<GeneratingSubspace> {
    let n = gb.nvars();
    let linear: Vec<MultiPoly> = (0..n).map(|i| gb.normal_form(&MultiPoly::var(n, i))).collect();
    if GeneratingSubspace::span(n, &linear).dim() < n {
        return Err(Error::DegenerateInput("the ideal contains a non-zero linear form".into()));
    }
    Ok(GeneratingSubspace::span(n, &dual_basis(gb)?))
}

fn annihilator(v: &GeneratingSubspace) -> GroebnerBasis {
    let n = v.nvars;
    let d = v.max_degree();
    let (gb, _) = kernel_ideal(n, d + 1, MonomialOrder::GrLex, |mu| {
        let w = exponent_factorial(mu);
        v.basis.iter().map(|f| f.coeff(mu) * &w).collect()
    });
    gb
}

/// `I_V = {g : <g|f> = 0 for all f in V}` for a generating
/// translation-invariant subspace.
pub fn ideal_from_v(v: &GeneratingSubspace) -> Result<GroebnerBasis> {
    if v.dim() == 0 || !v.is_translation_invariant() {
        return Err(Error::DegenerateInput("subspace is not translation invariant".into()));
    }
    if !v.is_generating() {
        return Err(Error::DegenerateInput("subspace is annihilated by a linear form".into()));
    }
    Ok(annihilator(v))
}

/// Square matrix with polynomial entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    size: usize,
    entries: Vec<MultiPoly>,
}

impl SymMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.size + j]
    }

    pub fn eval(&self, point: &[Rational]) -> QMatrix {
        let rows: Vec<Vec<Rational>> =
            (0..self.size).map(|i| (0..self.size).map(|j| self.get(i, j).eval(point)).collect()).collect();
        QMatrix::from_rows(&rows, self.size)
    }

    pub fn to_text(&self, names: &VarNames) -> Vec<Vec<String>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.get(i, j).to_text(MonomialOrder::GrLex, names)).collect())
            .collect()
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.size).all(|i| (i + 1..self.size).all(|j| self.get(i, j).is_zero()))
    }
}

/// `ρ(a)`: multiplication by `exp(a_1 s_1 + .. + a_n s_n)` in the stored
/// basis of the algebra; column `j` holds the image of `e_j`.
pub fn representation(p: &GaPair) -> SymMatrix {
    let n = p.n();
    let m = p.algebra.dim();
    let a: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(n, i)).collect();
    let e = p.exp_symbolic(&a);
    let mut entries = vec![MultiPoly::zero(n); m * m];
    for j in 0..m {
        let ej: SymElement = basis_vector(m, j).iter().map(|c| MultiPoly::constant(n, c.clone())).collect();
        let col = p.algebra.sym_mul(&e, &ej);
        for (i, c) in col.into_iter().enumerate() {
            entries[i * m + j] = c;
        }
    }
    SymMatrix { size: m, entries }
}

/// Names `a1..an` for group parameters followed by `z0..z_{m-1}`.
pub fn action_names(n: usize, m: usize) -> VarNames {
    VarNames::indexed("a", 1, n).chain(&VarNames::indexed("z", 0, m))
}

/// Coordinates of `exp(sum a_i s_i) · z` in the adapted basis
/// `(1, m_1, ..)`, as polynomials in `a_1..a_n, z_0..z_{m-1}`.
pub fn projective_action(p: &GaPair) -> Result<Vec<MultiPoly>> {
    let n = p.n();
    let alg = &p.algebra;
    let m = alg.dim();
    let total = n + m;
    let basis = alg.adapted_basis()?;
    let a: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(total, i)).collect();
    let e = alg.sym_exp(&alg.sym_combination(&a, &p.u_basis));
    let z: Vec<MultiPoly> = (0..m).map(|j| MultiPoly::var(total, n + j)).collect();
    let point = alg.sym_combination(&z, &basis);
    let image = alg.sym_mul(&e, &point);
    let inv = QMatrix::from_cols(&basis, m).inverse().expect("adapted basis");
    Ok((0..m)
        .map(|i| {
            let mut acc = MultiPoly::zero(total);
            for (k, x) in image.iter().enumerate() {
                let c = &inv[(i, k)];
                if !c.is_zero() {
                    acc = &acc + &x.scale(c);
                }
            }
            acc
        })
        .collect())
}

/// Fixed points of the action on `P(A)`: the socle.
pub fn fixed_locus(a: &Algebra) -> Result<Subspace> {
    a.socle()
}

/// True when some `f` has `V` as its derivative closure. Searches reduced
/// basis vectors and seeded random combinations, and cross-checks the result
/// against the Gorenstein property of `Q[S]/I_V`.
pub fn is_cyclic_module(v: &GeneratingSubspace) -> Result<bool> {
    if v.dim() == 0 || !v.is_translation_invariant() {
        return Err(Error::DegenerateInput("subspace is not translation invariant".into()));
    }
    let n = v.nvars;
    let generates = |f: &MultiPoly| GeneratingSubspace::derivative_closure(n, f).dim() == v.dim();
    let mut found = v.basis.iter().any(generates);
    if !found {
        let mut rng = ChaCha8Rng::seed_from_u64(0xc7c1);
        for _ in 0..crate::artin::RANDOM_TRIALS {
            let mut f = MultiPoly::zero(n);
            for b in &v.basis {
                f = &f + &b.scale(&q(rng.gen_range(-9..=9)));
            }
            if generates(&f) {
                found = true;
                break;
            }
        }
    }
    let gorenstein = Algebra::from_groebner(annihilator(v))?.is_gorenstein()?;
    if found != gorenstein {
        return Err(Error::Internal("cyclic-vector search disagrees with the Gorenstein test".into()));
    }
    Ok(gorenstein)
}

/// Checks `<ρ(β) g | f> = <g | f(x + β)>` in `Q[S]/I` for the ideal of the
/// pair, where `g` is given in the standard-monomial basis of that quotient
/// and `f` lies in `V_I`.
pub fn duality_check(p: &GaPair, beta: &[Rational], g: &[Rational], f: &MultiPoly) -> Result<bool> {
    let n = p.n();
    if beta.len() != n || f.nvars() != n {
        return Err(Error::InvalidInput("β and f must live in n variables".into()));
    }
    let gb = ideal_from_pair(p)?;
    let quotient = Algebra::from_groebner(gb.clone())?;
    if g.len() != quotient.dim() {
        return Err(Error::InvalidInput("g has the wrong length".into()));
    }
    if !generating_subspace(p).contains(f) {
        return Err(Error::InvalidInput("f does not lie in V_I".into()));
    }
    let shift = MultiPoly::from_terms(
        n,
        (0..n).map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            (e, beta[i].clone())
        }),
    );
    let e = quotient.exp_nilpotent(&quotient.element_of_poly(&shift)?)?;
    let moved = quotient.mul(&e, g);
    let lhs = pairing(&quotient.poly_of_element(&moved).unwrap(), f);
    let rhs = pairing(&quotient.poly_of_element(g).unwrap(), &f.translate(beta));
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn alg(n: usize, gens: &[&str]) -> Algebra {
        let names = VarNames::indexed("S", 1, n);
        let gens: Vec<MultiPoly> = gens.iter().map(|g| parse_poly(g, &names).unwrap()).collect();
        Algebra::from_presentation(n, &gens).unwrap()
    }

    #[test]
    fn twisted_cubic_pair() {
        let p = GaPair::maximal(Algebra::truncated_polynomial(3)).unwrap();
        let names = VarNames::indexed("S", 1, 2);
        let gb = ideal_from_pair(&p).unwrap();
        assert_eq!(gb.to_text(&names), vec!["S1^2 - S2", "S1*S2", "S2^2"]);
        let v = generating_subspace(&p);
        assert_eq!(v.to_text(&VarNames::indexed("x", 1, 2)), vec!["1", "x1", "1/2 * x1^2 + x2"]);
        assert_eq!(v, v_from_ideal(&gb).unwrap());
        assert_eq!(ideal_from_v(&v).unwrap(), gb);
    }

    #[test]
    fn line_pair_in_truncated_cubic() {
        let a = Algebra::truncated_polynomial(3);
        let s = a.basis_vector(1);
        let p = GaPair::new(a, vec![s]).unwrap();
        let gb = ideal_from_pair(&p).unwrap();
        assert_eq!(gb.to_text(&VarNames::indexed("S", 1, 1)), vec!["S1^3"]);
        let v = generating_subspace(&p);
        assert_eq!(v.to_text(&VarNames::indexed("x", 1, 1)), vec!["1", "x1", "x1^2"]);
    }

    #[test]
    fn pair_validation() {
        let a = Algebra::truncated_polynomial(3);
        assert!(!validate_pair(&a, &[a.basis_vector(2)]));
        assert!(!validate_pair(&a, &[a.unit().to_vec()]));
        assert!(validate_pair(&a, &[a.basis_vector(1), a.basis_vector(2)]));
    }

    #[test]
    fn representation_and_action() {
        let p = GaPair::maximal(Algebra::truncated_polynomial(3)).unwrap();
        let rho = representation(&p);
        let names = VarNames::indexed("a", 1, 2);
        assert_eq!(
            rho.to_text(&names),
            vec![vec!["1", "0", "0"], vec!["a1", "1", "0"], vec!["1/2 * a1^2 + a2", "a1", "1"]]
        );
        let act = projective_action(&p).unwrap();
        let names = action_names(2, 3);
        let text: Vec<String> = act.iter().map(|f| f.to_text(MonomialOrder::GrLex, &names)).collect();
        assert_eq!(text, vec!["z0", "a1*z0 + z1", "1/2 * a1^2*z0 + a1*z1 + a2*z0 + z2"]);
    }

    #[test]
    fn square_zero_action() {
        let p = GaPair::maximal(alg(2, &["S1^2", "S1*S2", "S2^2"])).unwrap();
        let act = projective_action(&p).unwrap();
        let names = action_names(2, 3);
        let text: Vec<String> = act.iter().map(|f| f.to_text(MonomialOrder::GrLex, &names)).collect();
        assert_eq!(text, vec!["z0", "a1*z0 + z1", "a2*z0 + z2"]);
        assert_eq!(fixed_locus(p.algebra()).unwrap().dim(), 2);
    }

    #[test]
    fn cyclicity_matches_gorenstein() {
        let g = GaPair::maximal(alg(2, &["S1*S2", "S1^2 - S2^2"])).unwrap();
        assert!(is_cyclic_module(&generating_subspace(&g)).unwrap());
        let h = GaPair::maximal(alg(2, &["S1^2", "S1*S2", "S2^2"])).unwrap();
        assert!(!is_cyclic_module(&generating_subspace(&h)).unwrap());
    }

    #[test]
    fn degenerate_inputs() {
        let names = VarNames::indexed("S", 1, 2);
        let gb = crate::poly::groebner(
            2,
            &[parse_poly("S2", &names).unwrap(), parse_poly("S1^2", &names).unwrap()],
            MonomialOrder::GrLex,
            64,
        )
        .unwrap();
        assert!(matches!(v_from_ideal(&gb), Err(Error::DegenerateInput(_))));
        let x = VarNames::indexed("x", 1, 2);
        let v = GeneratingSubspace::span(2, &[parse_poly("1", &x).unwrap(), parse_poly("x1^2", &x).unwrap()]);
        assert!(matches!(ideal_from_v(&v), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn duality_identity() {
        let p = GaPair::maximal(Algebra::truncated_polynomial(3)).unwrap();
        let x = VarNames::indexed("x", 1, 2);
        let f = parse_poly("x2 + x1^2/2 + 3*x1 - 2", &x).unwrap();
        let g = vec![q(1), q(-2), q(5)];
        assert!(duality_check(&p, &[q(3), crate::exact::qf(-1, 2)], &g, &f).unwrap());
    }
}
