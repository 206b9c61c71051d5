//! Finite-dimensional commutative algebras given by structure constants:
//! validation, splitting into local summands, the maximal ideal and its
//! powers, Hilbert-Samuel sequence, socle, exponential and logarithm of
//! nilpotents, projective orbit counts, and cyclic vectors of commuting
//! operators.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{factorial, q, rational_roots, vec_is_zero, QMatrix, Rational, Subspace};
use crate::poly::{
    degree_cap_from_env, groebner, Exponent, GroebnerBasis, MonomialOrder, MultiPoly, VarNames, DEFAULT_MONOMIAL_CAP,
};

/// Polynomial presentation `Q[S_1..S_n]/I` behind an algebra whose basis is
/// the standard monomials of `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub gb: GroebnerBasis,
    pub monomials: Vec<Exponent>,
}

impl Presentation {
    pub fn nvars(&self) -> usize {
        self.gb.nvars()
    }
}

/// Commutative associative unital algebra of dimension `m` over `Q` with
/// basis `e_0..e_{m-1}` and structure constants `e_i e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    table: Vec<Rational>,
    unit: Vec<Rational>,
    labels: Vec<String>,
    presentation: Option<Presentation>,
}

/// Flat record of invariants. For a non-local algebra the Hilbert-Samuel
/// sequence is empty and the socle dimension and Gorenstein flag refer to
/// the local summands collectively.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraInvariants {
    pub dim: usize,
    pub is_local: bool,
    pub num_local_summands: usize,
    pub hilbert_samuel: Vec<usize>,
    pub socle_dim: usize,
    pub is_gorenstein: bool,
    pub nilpotency_index: usize,
}

/// Number of orbits of the additive group action on projective space of an
/// algebra, or `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitCount {
    Finite(u64),
    Infinite,
}

/// Algebra element with polynomial coefficients, one per basis vector.
pub type SymElement = Vec<MultiPoly>;

impl Algebra {
    /// Builds an algebra from `table[i][j][k]`, the `e_k` coefficient of
    /// `e_i e_j`. Without an explicit unit, the unit is solved for.
    pub fn from_structure_constants(
        table: &[Vec<Vec<Rational>>],
        unit: Option<Vec<Rational>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let dim = table.len();
        if dim == 0 {
            return Err(Error::InvalidInput("algebra must have positive dimension".into()));
        }
        let mut flat = Vec::with_capacity(dim * dim * dim);
        for row in table {
            if row.len() != dim {
                return Err(Error::InvalidInput("structure constant table is not cubical".into()));
            }
            for v in row {
                if v.len() != dim {
                    return Err(Error::InvalidInput("structure constant table is not cubical".into()));
                }
                flat.extend(v.iter().cloned());
            }
        }
        let unit = match unit {
            Some(u) => u,
            None => {
                let rows: Vec<Vec<Rational>> = (0..dim * dim)
                    .map(|jk| (0..dim).map(|i| table[i][jk / dim][jk % dim].clone()).collect())
                    .collect();
                let rhs: Vec<Rational> =
                    (0..dim * dim).map(|jk| Rational::from_integer(i64::from(jk / dim == jk % dim).into())).collect();
                QMatrix::from_rows(&rows, dim)
                    .solve(&rhs)
                    .ok_or_else(|| Error::InvalidInput("structure constants admit no unit".into()))?
            }
        };
        if unit.len() != dim {
            return Err(Error::InvalidInput("unit has the wrong length".into()));
        }
        let labels = labels.unwrap_or_else(|| (0..dim).map(|i| format!("e{i}")).collect());
        if labels.len() != dim {
            return Err(Error::InvalidInput("wrong number of basis labels".into()));
        }
        Ok(Algebra { dim, table: flat, unit, labels, presentation: None })
    }

    /// `Q[S_1..S_n]/(gens)` with the standard-monomial basis. The ideal must
    /// have finite codimension and be supported at the origin.
    pub fn from_presentation(nvars: usize, gens: &[MultiPoly]) -> Result<Self> {
        let a = Self::from_quotient(nvars, gens)?;
        if (1..=nvars).any(|i| {
            let e = a.element_of_poly(&MultiPoly::var(nvars, i - 1)).expect("presentation algebra");
            !a.is_nilpotent(&e)
        }) {
            return Err(Error::NotSupportedAtOrigin);
        }
        Ok(a)
    }

    /// `Q[S_1..S_n]/(gens)` for any ideal of finite codimension.
    pub fn from_quotient(nvars: usize, gens: &[MultiPoly]) -> Result<Self> {
        let gb = groebner(nvars, gens, MonomialOrder::GrLex, degree_cap_from_env())?;
        Self::from_groebner(gb)
    }

    /// Quotient by an ideal given by its reduced Gröbner basis.
    pub fn from_groebner(gb: GroebnerBasis) -> Result<Self> {
        let monomials = gb.standard_monomials(DEFAULT_MONOMIAL_CAP)?;
        if monomials.is_empty() {
            return Err(Error::InvalidInput("the ideal is the whole ring".into()));
        }
        let n = gb.nvars();
        let dim = monomials.len();
        let names = VarNames::indexed("S", 1, n);
        let labels: Vec<String> = monomials
            .iter()
            .map(|e| {
                let s = names.monomial(e);
                if s.is_empty() {
                    "1".to_string()
                } else {
                    s
                }
            })
            .collect();
        let mut table = vec![Rational::zero(); dim * dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let prod: Exponent = monomials[i].iter().zip(&monomials[j]).map(|(a, b)| a + b).collect();
                let nf = gb.normal_form(&MultiPoly::monomial(prod, Rational::one()));
                for (e, c) in nf.terms() {
                    let k = monomials.iter().position(|m| m == e).expect("normal form uses standard monomials");
                    table[(i * dim + j) * dim + k] = c.clone();
                    table[(j * dim + i) * dim + k] = c.clone();
                }
            }
        }
        let unit_idx = monomials.iter().position(|e| e.iter().all(|&k| k == 0)).expect("1 is standard");
        Ok(Algebra {
            dim,
            table,
            unit: basis_vector(dim, unit_idx),
            labels,
            presentation: Some(Presentation { gb, monomials }),
        })
    }

    /// `Q^m` with coordinatewise multiplication.
    pub fn product_of_fields(m: usize) -> Self {
        let mut table = vec![Rational::zero(); m * m * m];
        for i in 0..m {
            table[(i * m + i) * m + i] = Rational::one();
        }
        Algebra {
            dim: m,
            table,
            unit: vec![Rational::one(); m],
            labels: (0..m).map(|i| format!("e{i}")).collect(),
            presentation: None,
        }
    }

    /// `Q[S]/(S^m)`.
    pub fn truncated_polynomial(m: usize) -> Self {
        let s = MultiPoly::var(1, 0);
        Self::from_presentation(1, &[s.pow(m as u32)]).expect("truncated polynomial algebra")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    /// `c[i][j][k]`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.table[(i * self.dim + j) * self.dim + k]
    }

    /// Structure constants as nested vectors.
    pub fn table(&self) -> Vec<Vec<Vec<Rational>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| (0..self.dim).map(|k| self.constant(i, j, k).clone()).collect()).collect())
            .collect()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        basis_vector(self.dim, i)
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let m = self.dim;
        let mut out = vec![Rational::zero(); m];
        for i in 0..m {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..m {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for k in 0..m {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        out[k] += &xy * c;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[Rational], k: u32) -> Vec<Rational> {
        let mut acc = self.unit.clone();
        for _ in 0..k {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Matrix of `L_x : y -> x y`; column `j` holds the coordinates of `x e_j`.
    pub fn mult_matrix(&self, x: &[Rational]) -> QMatrix {
        let cols: Vec<Vec<Rational>> = (0..self.dim).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        QMatrix::from_cols(&cols, self.dim)
    }

    pub fn is_nilpotent(&self, x: &[Rational]) -> bool {
        self.mult_matrix(x).pow(self.dim as u32).is_zero()
    }

    /// Checks commutativity, associativity and the unit law on basis vectors.
    pub fn validate(&self) -> bool {
        let m = self.dim;
        for i in 0..m {
            let ei = self.basis_vector(i);
            if self.mul(&self.unit, &ei) != ei {
                return false;
            }
            for j in 0..m {
                for k in 0..m {
                    if self.constant(i, j, k) != self.constant(j, i, k) {
                        return false;
                    }
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                let eij = self.mul(&self.basis_vector(i), &self.basis_vector(j));
                for k in 0..m {
                    let ek = self.basis_vector(k);
                    if self.mul(&eij, &ek) != self.mul(&self.basis_vector(i), &self.mul(&self.basis_vector(j), &ek)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Coordinates of a polynomial in the presentation variables.
    pub fn element_of_poly(&self, f: &MultiPoly) -> Result<Vec<Rational>> {
        let p = self
            .presentation
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("algebra has no polynomial presentation".into()))?;
        if f.nvars() != p.nvars() {
            return Err(Error::InvalidInput("polynomial lives in the wrong ring".into()));
        }
        let nf = p.gb.normal_form(f);
        let mut v = vec![Rational::zero(); self.dim];
        for (e, c) in nf.terms() {
            let k = p.monomials.iter().position(|m| m == e).expect("normal form uses standard monomials");
            v[k] = c.clone();
        }
        Ok(v)
    }

    /// Polynomial representative `sum x_i mu_i` of an element.
    pub fn poly_of_element(&self, x: &[Rational]) -> Option<MultiPoly> {
        let p = self.presentation.as_ref()?;
        Some(MultiPoly::from_terms(
            p.nvars(),
            p.monomials.iter().cloned().zip(x.iter().cloned()),
        ))
    }

    /// Decomposes the algebra into local summands by splitting generalized
    /// eigenspaces of multiplication operators. Fails with
    /// `IRRATIONAL_SPLITTING` if an eigenvalue is not rational.
    pub fn local_decomposition(&self) -> Result<Vec<Algebra>> {
        let parts = self.local_ideals()?;
        if parts.len() == 1 {
            return Ok(vec![self.clone()]);
        }
        // Components of 1 along the direct sum are the summand units.
        let mut cols: Vec<Vec<Rational>> = Vec::new();
        for w in &parts {
            cols.extend(w.basis().iter().cloned());
        }
        let coords = QMatrix::from_cols(&cols, self.dim).solve(&self.unit).expect("ideals span the algebra");
        let mut out = Vec::new();
        let mut offset = 0;
        for w in &parts {
            let d = w.dim();
            let unit = coords[offset..offset + d].to_vec();
            offset += d;
            let mut table = vec![vec![vec![Rational::zero(); d]; d]; d];
            for i in 0..d {
                for j in 0..d {
                    let prod = self.mul(&w.basis()[i], &w.basis()[j]);
                    table[i][j] = w.coordinates(&prod).expect("summand is an ideal");
                }
            }
            out.push(Algebra::from_structure_constants(&table, Some(unit), None)?);
        }
        Ok(out)
    }

    fn local_ideals(&self) -> Result<Vec<Subspace>> {
        let mut parts = vec![Subspace::full(self.dim)];
        'outer: loop {
            for (idx, w) in parts.iter().enumerate() {
                for b in 0..self.dim {
                    let pieces = self.split_by(w, &self.basis_vector(b))?;
                    if pieces.len() > 1 {
                        let mut next = parts.clone();
                        next.splice(idx..=idx, pieces);
                        parts = next;
                        continue 'outer;
                    }
                }
            }
            return Ok(parts);
        }
    }

    fn split_by(&self, w: &Subspace, b: &[Rational]) -> Result<Vec<Subspace>> {
        let d = w.dim();
        let cols: Vec<Vec<Rational>> =
            w.basis().iter().map(|v| w.coordinates(&self.mul(b, v)).expect("ideal is stable")).collect();
        let r = QMatrix::from_cols(&cols, d);
        let (roots, split) = rational_roots(&r.char_poly());
        if !split {
            return Err(Error::IrrationalSplitting);
        }
        if roots.len() <= 1 {
            return Ok(vec![w.clone()]);
        }
        Ok(roots
            .iter()
            .map(|(lambda, _)| {
                let shifted = r.sub(&QMatrix::identity(d).scale(lambda)).pow(d as u32);
                let vecs: Vec<Vec<Rational>> = shifted
                    .kernel()
                    .iter()
                    .map(|c| {
                        let mut v = vec![Rational::zero(); self.dim];
                        for (a, x) in c.iter().zip(w.basis()) {
                            for (vi, xi) in v.iter_mut().zip(x) {
                                *vi += a * xi;
                            }
                        }
                        v
                    })
                    .collect();
                Subspace::span(self.dim, &vecs)
            })
            .collect())
    }

    /// Residue map `x -> tr(L_x)/m`; on a local algebra this is the unique
    /// eigenvalue of `L_x`.
    pub fn residue(&self, x: &[Rational]) -> Rational {
        let l = self.mult_matrix(x);
        let tr: Rational = (0..self.dim).map(|i| l[(i, i)].clone()).sum();
        tr / q(self.dim as i64)
    }

    pub fn is_local(&self) -> bool {
        (0..self.dim).all(|i| {
            let e = self.basis_vector(i);
            let r = self.residue(&e);
            let shifted: Vec<Rational> = e.iter().zip(&self.unit).map(|(a, u)| a - &r * u).collect();
            self.is_nilpotent(&shifted)
        })
    }

    /// The maximal ideal of a local algebra: the nilpotent elements.
    pub fn maximal_ideal(&self) -> Result<Subspace> {
        if !self.is_local() {
            return Err(Error::NotLocal);
        }
        let vecs: Vec<Vec<Rational>> = (0..self.dim)
            .map(|i| {
                let e = self.basis_vector(i);
                let r = self.residue(&e);
                e.iter().zip(&self.unit).map(|(a, u)| a - &r * u).collect()
            })
            .collect();
        Ok(Subspace::span(self.dim, &vecs))
    }

    /// Product of two subspaces: the span of all pairwise products.
    pub fn product(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                vecs.push(self.mul(x, y));
            }
        }
        Subspace::span(self.dim, &vecs)
    }

    /// `A, m, m^2, ...` up to and including the first zero power.
    pub fn ideal_chain(&self) -> Result<Vec<Subspace>> {
        let m = self.maximal_ideal()?;
        let mut chain = vec![Subspace::full(self.dim), m.clone()];
        while chain.last().unwrap().dim() > 0 {
            let next = self.product(chain.last().unwrap(), &m);
            chain.push(next);
        }
        Ok(chain)
    }

    /// `m^k` for a local algebra.
    pub fn maximal_ideal_power(&self, k: usize) -> Result<Subspace> {
        let chain = self.ideal_chain()?;
        Ok(chain.get(k).cloned().unwrap_or_else(|| Subspace::zero(self.dim)))
    }

    /// Smallest `l` with `m^l = 0`.
    pub fn nilpotency_index(&self) -> Result<usize> {
        Ok(self.ideal_chain()?.len() - 1)
    }

    /// `r_i = dim m^i - dim m^{i+1}` for `i = 0..l-1`.
    pub fn hilbert_samuel(&self) -> Result<Vec<usize>> {
        let chain = self.ideal_chain()?;
        Ok(chain.windows(2).map(|w| w[0].dim() - w[1].dim()).collect())
    }

    /// Annihilator of the maximal ideal of a local algebra.
    pub fn socle(&self) -> Result<Subspace> {
        let m = self.maximal_ideal()?;
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for u in m.basis() {
            rows.extend(self.mult_matrix(u).row_vecs());
        }
        if rows.is_empty() {
            return Ok(Subspace::full(self.dim));
        }
        Ok(Subspace::span(self.dim, &QMatrix::from_rows(&rows, self.dim).kernel()))
    }

    pub fn is_gorenstein(&self) -> Result<bool> {
        Ok(self.socle()?.dim() == 1)
    }

    pub fn invariants(&self) -> Result<AlgebraInvariants> {
        if self.is_local() {
            let hs = self.hilbert_samuel()?;
            let socle_dim = self.socle()?.dim();
            return Ok(AlgebraInvariants {
                dim: self.dim,
                is_local: true,
                num_local_summands: 1,
                nilpotency_index: hs.len(),
                hilbert_samuel: hs,
                socle_dim,
                is_gorenstein: socle_dim == 1,
            });
        }
        let parts = self.local_decomposition()?;
        let mut socle_dim = 0;
        let mut gorenstein = true;
        let mut nilp = 0;
        for p in &parts {
            let s = p.socle()?.dim();
            socle_dim += s;
            gorenstein &= s == 1;
            nilp = nilp.max(p.nilpotency_index()?);
        }
        Ok(AlgebraInvariants {
            dim: self.dim,
            is_local: false,
            num_local_summands: parts.len(),
            hilbert_samuel: Vec::new(),
            socle_dim,
            is_gorenstein: gorenstein,
            nilpotency_index: nilp,
        })
    }

    /// `exp(z) = sum z^k/k!` for nilpotent `z`.
    pub fn exp_nilpotent(&self, z: &[Rational]) -> Result<Vec<Rational>> {
        if !self.is_nilpotent(z) {
            return Err(Error::NotNilpotent);
        }
        let mut acc = self.unit.clone();
        let mut power = self.unit.clone();
        for k in 1..=self.dim as u32 {
            power = self.mul(&power, z);
            if vec_is_zero(&power) {
                break;
            }
            let f = factorial(k).recip();
            for (a, p) in acc.iter_mut().zip(&power) {
                *a += p * &f;
            }
        }
        Ok(acc)
    }

    /// `ln(1 + z) = sum (-1)^(k-1) z^k/k` for nilpotent `z`.
    pub fn log_one_plus(&self, z: &[Rational]) -> Result<Vec<Rational>> {
        if !self.is_nilpotent(z) {
            return Err(Error::NotNilpotent);
        }
        let mut acc = vec![Rational::zero(); self.dim];
        let mut power = self.unit.clone();
        for k in 1..=self.dim as i64 {
            power = self.mul(&power, z);
            if vec_is_zero(&power) {
                break;
            }
            let f = if k % 2 == 1 { q(1) } else { q(-1) } / q(k);
            for (a, p) in acc.iter_mut().zip(&power) {
                *a += p * &f;
            }
        }
        Ok(acc)
    }

    /// Largest ideal contained in the subspace `u`: `{x : A x ⊆ u}`.
    pub fn largest_ideal_in(&self, u: &Subspace) -> Subspace {
        let mut cur = u.clone();
        for i in 0..self.dim {
            // Preimage of u under L_{e_i}, intersected with the current space.
            let l = self.mult_matrix(&self.basis_vector(i));
            let mut cols = Vec::new();
            for v in cur.basis() {
                cols.push(u.reduce(&l.mul_vec(v)));
            }
            if cur.dim() == 0 {
                break;
            }
            let m = QMatrix::from_cols(&cols, self.dim);
            let vecs: Vec<Vec<Rational>> = m
                .kernel()
                .iter()
                .map(|c| combine(c, cur.basis(), self.dim))
                .collect();
            cur = Subspace::span(self.dim, &vecs);
        }
        cur
    }

    pub fn is_ideal(&self, u: &Subspace) -> bool {
        (0..self.dim).all(|i| u.basis().iter().all(|v| u.contains(&self.mul(&self.basis_vector(i), v))))
    }

    /// Quotient by an ideal `j`. The new basis consists of the images of
    /// those old basis vectors that extend `j`, taken greedily in order.
    pub fn quotient(&self, j: &Subspace) -> Result<Quotient> {
        if !self.is_ideal(j) {
            return Err(Error::InvalidInput("not an ideal".into()));
        }
        let basis: Vec<Vec<Rational>> = (0..self.dim).map(|i| self.basis_vector(i)).collect();
        let kept = j.greedy_extension(&basis);
        let d = kept.len();
        let mut cols: Vec<Vec<Rational>> = kept.iter().map(|&i| basis[i].clone()).collect();
        cols.extend(j.basis().iter().cloned());
        let inv = QMatrix::from_cols(&cols, self.dim).inverse().expect("complement of the ideal");
        let project = |v: &[Rational]| inv.mul_vec(v)[..d].to_vec();
        let mut table = vec![vec![vec![Rational::zero(); d]; d]; d];
        for a in 0..d {
            for b in 0..d {
                table[a][b] = project(&self.mul(&basis[kept[a]], &basis[kept[b]]));
            }
        }
        let unit = project(&self.unit);
        let labels = kept.iter().map(|&i| self.labels[i].clone()).collect();
        let algebra = Algebra::from_structure_constants(&table, Some(unit), Some(labels))?;
        Ok(Quotient { algebra, kept, inv })
    }

    /// Basis `(1, m_1, .., m_{m-1})` adapted to `A = Q 1 ⊕ m`: the stored
    /// basis when it already has this shape, otherwise the unit followed by
    /// the reduced basis of the maximal ideal.
    pub fn adapted_basis(&self) -> Result<Vec<Vec<Rational>>> {
        let m = self.maximal_ideal()?;
        let stored_ok = self.unit == self.basis_vector(0) && (1..self.dim).all(|i| m.contains(&self.basis_vector(i)));
        if stored_ok {
            return Ok((0..self.dim).map(|i| self.basis_vector(i)).collect());
        }
        let mut out = vec![self.unit.clone()];
        out.extend(m.basis().iter().cloned());
        Ok(out)
    }

    /// Product of symbolic elements.
    pub fn sym_mul(&self, x: &[MultiPoly], y: &[MultiPoly]) -> SymElement {
        let n = x[0].nvars();
        let m = self.dim;
        let mut out = vec![MultiPoly::zero(n); m];
        for i in 0..m {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..m {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for k in 0..m {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        out[k] = &out[k] + &xy.scale(c);
                    }
                }
            }
        }
        out
    }

    /// Symbolic element `sum coords_i * v_i` from rational vectors.
    pub fn sym_combination(&self, coeffs: &[MultiPoly], vectors: &[Vec<Rational>]) -> SymElement {
        let n = coeffs.first().map_or(0, |c| c.nvars());
        let mut out = vec![MultiPoly::zero(n); self.dim];
        for (c, v) in coeffs.iter().zip(vectors) {
            for (o, x) in out.iter_mut().zip(v) {
                if !x.is_zero() {
                    *o = &*o + &c.scale(x);
                }
            }
        }
        out
    }

    /// Powers `z^0, z^1, ..` of a symbolic element up to the first zero one,
    /// at most `dim + 1` of them.
    pub fn sym_powers(&self, z: &[MultiPoly]) -> Vec<SymElement> {
        let n = z[0].nvars();
        let one: SymElement = self.unit.iter().map(|u| MultiPoly::constant(n, u.clone())).collect();
        let mut out = vec![one];
        for _ in 0..self.dim {
            let next = self.sym_mul(out.last().unwrap(), z);
            if next.iter().all(MultiPoly::is_zero) {
                break;
            }
            out.push(next);
        }
        out
    }

    /// `exp(z)` for a symbolic element with nilpotent values.
    pub fn sym_exp(&self, z: &[MultiPoly]) -> SymElement {
        let powers = self.sym_powers(z);
        let n = z[0].nvars();
        let mut acc = vec![MultiPoly::zero(n); self.dim];
        for (k, p) in powers.iter().enumerate() {
            let f = factorial(k as u32).recip();
            for (a, x) in acc.iter_mut().zip(p) {
                *a = &*a + &x.scale(&f);
            }
        }
        acc
    }

    /// `ln(1 + z)` for a symbolic element with nilpotent values.
    pub fn sym_log_one_plus(&self, z: &[MultiPoly]) -> SymElement {
        let powers = self.sym_powers(z);
        let n = z[0].nvars();
        let mut acc = vec![MultiPoly::zero(n); self.dim];
        for (k, p) in powers.iter().enumerate().skip(1) {
            let f = if k % 2 == 1 { q(1) } else { q(-1) } / q(k as i64);
            for (a, x) in acc.iter_mut().zip(p) {
                *a = &*a + &x.scale(&f);
            }
        }
        acc
    }
}

/// Quotient algebra `A/J` with the projection from `A`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Algebra,
    /// Old basis indices whose images form the new basis.
    pub kept: Vec<usize>,
    inv: QMatrix,
}

impl Quotient {
    /// Image of an element of `A` in the quotient basis.
    pub fn project(&self, v: &[Rational]) -> Vec<Rational> {
        self.inv.mul_vec(v)[..self.kept.len()].to_vec()
    }
}

pub fn basis_vector(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::one();
    v
}

fn combine(coeffs: &[Rational], vectors: &[Vec<Rational>], dim: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    for (a, x) in coeffs.iter().zip(vectors) {
        if a.is_zero() {
            continue;
        }
        for (vi, xi) in v.iter_mut().zip(x) {
            *vi += a * xi;
        }
    }
    v
}

/// Number of orbits of the additive group on `P(A)` acting through
/// `exp(m)`: finite exactly when every local summand has embedding dimension
/// at most one, and then `prod (m_i + 1) - 1` where `m_i` is the summand's
/// dimension.
pub fn orbit_count_projective(a: &Algebra) -> Result<OrbitCount> {
    let mut count: u64 = 1;
    for part in a.local_decomposition()? {
        let chain = part.ideal_chain()?;
        let emb = chain[1].dim() - chain.get(2).map_or(0, Subspace::dim);
        if emb > 1 {
            return Ok(OrbitCount::Infinite);
        }
        count = count.saturating_mul(part.dim() as u64 + 1);
    }
    Ok(OrbitCount::Finite(count - 1))
}

fn check_commuting(matrices: &[QMatrix]) -> Result<usize> {
    let m = matrices.first().map_or(0, QMatrix::rows);
    for a in matrices {
        if a.rows() != m || a.cols() != m {
            return Err(Error::InvalidInput("matrices must be square of one size".into()));
        }
    }
    for (i, a) in matrices.iter().enumerate() {
        for b in &matrices[i + 1..] {
            if a.mul(b) != b.mul(a) {
                return Err(Error::NotCommuting);
            }
        }
    }
    Ok(m)
}

fn flatten(a: &QMatrix) -> Vec<Rational> {
    a.row_vecs().concat()
}

fn unflatten(v: &[Rational], m: usize) -> QMatrix {
    let rows: Vec<Vec<Rational>> = v.chunks(m).map(<[Rational]>::to_vec).collect();
    QMatrix::from_rows(&rows, m)
}

/// Basis of the span of all non-empty products of the matrices.
fn nonunital_closure(matrices: &[QMatrix], m: usize) -> Vec<QMatrix> {
    let mut span = Subspace::zero(m * m);
    let mut queue: Vec<QMatrix> = matrices.to_vec();
    while let Some(x) = queue.pop() {
        let flat = flatten(&x);
        if span.contains(&flat) {
            continue;
        }
        span = span.sum(&Subspace::span(m * m, &[flat]));
        for g in matrices {
            queue.push(g.mul(&x));
        }
    }
    span.basis().iter().map(|v| unflatten(v, m)).collect()
}

/// A vector `v` with `B v = Q^m`, where `B` is the unital algebra generated
/// by the commuting matrices. Tries standard basis vectors, then seeded
/// random combinations; `None` means the search found none.
pub fn cyclic_vector(matrices: &[QMatrix]) -> Result<Option<Vec<Rational>>> {
    let m = check_commuting(matrices)?;
    if m == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut algebra = nonunital_closure(matrices, m);
    algebra.push(QMatrix::identity(m));
    let generates = |v: &[Rational]| {
        let images: Vec<Vec<Rational>> = algebra.iter().map(|b| b.mul_vec(v)).collect();
        Subspace::span(m, &images).dim() == m
    };
    for i in 0..m {
        let v = basis_vector(m, i);
        if generates(&v) {
            return Ok(Some(v));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..RANDOM_TRIALS {
        let v: Vec<Rational> = (0..m).map(|_| q(rng.gen_range(-7..=7))).collect();
        if generates(&v) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Number of random candidates tried after the deterministic ones.
pub const RANDOM_TRIALS: usize = 16;

/// `m - dim(N Q^m)` where `N` is the non-unital algebra generated by the
/// commuting nilpotent matrices.
pub fn kravchuk_number(matrices: &[QMatrix]) -> Result<usize> {
    let m = check_commuting(matrices)?;
    for a in matrices {
        if !a.pow(m as u32).is_zero() {
            return Err(Error::NotNilpotent);
        }
    }
    let n = nonunital_closure(matrices, m);
    let mut images = Vec::new();
    for b in &n {
        for j in 0..m {
            images.push(b.mul_vec(&basis_vector(m, j)));
        }
    }
    Ok(m - Subspace::span(m, &images).dim())
}

/// `sum_i coeffs_i * vectors_i` for rational vectors of length `dim`.
pub fn linear_combination(coeffs: &[Rational], vectors: &[Vec<Rational>], dim: usize) -> Vec<Rational> {
    combine(coeffs, vectors, dim)
}
