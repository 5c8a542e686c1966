//! Exact algebra of finitely generated abelian groups.
//!
//! Integer matrices with arbitrary-precision entries, Smith normal form
//! with transformation matrices, cokernels, ℓ-Sylow parts, alternating
//! squares and the knot-group quotient
//! `(G ∧ G) / Σ_v φ_v(G_v ∧ G_v)` of an abelian extension.
//!
//! Groups are always kept in invariant-factor form `d_1 | d_2 | … | d_k`
//! with every `d_i ≥ 2`; equality of groups is equality of those factor
//! sequences.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row major, exact entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor from machine integers, for tests and small
    /// presentations.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        IntMatrix {
            rows,
            cols,
            data: entries.iter().map(|&e| BigInt::from(e)).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::new(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::new(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::new(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row a -= q * row b
    fn row_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = q * &self[(b, j)];
            self[(a, j)] -= t;
        }
    }

    /// col a -= q * col b
    fn col_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = q * &self[(i, b)];
            self[(i, a)] -= t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self[(a, j)].clone();
            self[(a, j)] = v;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = num / &prev;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }
}

impl core::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Smith normal form `U · M · V = S` with `U`, `V` unimodular and the
/// diagonal of `S` a nonnegative divisibility chain.
pub struct Snf {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

/// Smith normal form by exact reduction, pivoting on the smallest nonzero
/// entry to control coefficient growth. Total function: any shape, any
/// entries.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let n = core::cmp::min(s.rows(), s.cols());

    for t in 0..n {
        'pivot: loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..s.rows() {
                for j in t..s.cols() {
                    if s[(i, j)].is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if s[(i, j)].abs() < s[(bi, bj)].abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                // Trailing block is zero; done with this and all later pivots.
                return finish_snf(s, u, v);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..s.rows() {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = s[(i, t)].div_floor(&s[(t, t)]);
                s.row_sub(i, t, &q);
                u.row_sub(i, t, &q);
                if !s[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..s.cols() {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = s[(t, j)].div_floor(&s[(t, t)]);
                s.col_sub(j, t, &q);
                v.col_sub(j, t, &q);
                if !s[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }
            // Row and column are clear; enforce that the pivot divides the
            // trailing block before moving on, folding offenders into the
            // pivot column.
            for i in t + 1..s.rows() {
                for j in t + 1..s.cols() {
                    if !(&s[(i, j)] % &s[(t, t)]).is_zero() {
                        // col t += col j, then restart reduction at this pivot
                        let one = BigInt::one();
                        let minus = -one;
                        s.col_sub(t, j, &minus);
                        v.col_sub(t, j, &minus);
                        continue 'pivot;
                    }
                }
            }
            break;
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    finish_snf(s, u, v)
}

fn finish_snf(mut s: IntMatrix, mut u: IntMatrix, v: IntMatrix) -> Snf {
    let n = core::cmp::min(s.rows(), s.cols());
    for t in 0..n {
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { s, u, v }
}

/// Diagonal of an SNF result as owned integers.
pub fn snf_diagonal(s: &IntMatrix) -> Vec<BigInt> {
    (0..core::cmp::min(s.rows(), s.cols()))
        .map(|i| s[(i, i)].clone())
        .collect()
}

/// Does `v` lie in the lattice spanned by the rows of `basis`?
pub fn in_row_span(basis: &IntMatrix, v: &[BigInt]) -> bool {
    assert_eq!(basis.cols(), v.len());
    // y·B = v  ⇔  z·S = v·V with z = y·U⁻¹; solvable over Z iff each
    // diagonal entry divides the matching coordinate and the rest vanish.
    let snf = smith_normal_form(basis);
    let w = IntMatrix::from_rows(vec![v.to_vec()]).mul(&snf.v);
    let n = core::cmp::min(basis.rows(), basis.cols());
    for j in 0..basis.cols() {
        let wj = &w[(0, j)];
        if j < n && !snf.s[(j, j)].is_zero() {
            if !(wj % &snf.s[(j, j)]).is_zero() {
                return false;
            }
        } else if !wj.is_zero() {
            return false;
        }
    }
    true
}

/// A finite abelian group in invariant-factor form.
///
/// `factors[0] | factors[1] | …`, each ≥ 2. Labels, when present, name the
/// generators aligned with the factors. Equality and ordering ignore labels.
#[derive(Clone, Eq)]
pub struct FinAbGroup {
    factors: Vec<BigUint>,
    labels: Option<Vec<String>>,
}

impl PartialEq for FinAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl PartialOrd for FinAbGroup {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FinAbGroup {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.factors.cmp(&other.factors)
    }
}

impl FinAbGroup {
    /// The trivial group.
    pub fn trivial() -> Self {
        FinAbGroup {
            factors: Vec::new(),
            labels: None,
        }
    }

    /// Normalize an arbitrary list of cyclic orders into invariant-factor
    /// form (orders 0 and 1 are rejected; use [`cokernel`] for presentations
    /// with free parts).
    pub fn from_orders(orders: &[BigUint]) -> Result<Self> {
        if orders.iter().any(Zero::is_zero) {
            return Err(Error::Malformed("cyclic order 0 in finite group".into()));
        }
        // CRT split into prime powers, then rebuild the divisibility chain.
        let mut by_prime: Vec<(BigUint, Vec<u32>)> = Vec::new();
        for d in orders {
            let mut rest = d.clone();
            let mut p = BigUint::from(2u32);
            while &p * &p <= rest {
                if (&rest % &p).is_zero() {
                    let mut e = 0u32;
                    while (&rest % &p).is_zero() {
                        rest /= &p;
                        e += 1;
                    }
                    push_prime_power(&mut by_prime, &p, e);
                }
                p += 1u32;
            }
            if rest > BigUint::one() {
                push_prime_power(&mut by_prime, &rest, 1);
            }
        }
        let depth = by_prime.iter().map(|(_, es)| es.len()).max().unwrap_or(0);
        let mut factors = Vec::new();
        // Largest factor collects the largest power of every prime.
        for level in (0..depth).rev() {
            let mut f = BigUint::one();
            for (p, es) in &by_prime {
                if let Some(&e) = es.get(level) {
                    f *= p.pow(e);
                }
            }
            factors.push(f);
        }
        Ok(FinAbGroup {
            factors,
            labels: None,
        })
    }

    pub fn from_u64_orders(orders: &[u64]) -> Result<Self> {
        let v: Vec<BigUint> = orders.iter().map(|&d| BigUint::from(d)).collect();
        Self::from_orders(&v)
    }

    /// Build directly from an already-valid invariant factor chain.
    pub fn from_invariant_factors(factors: Vec<BigUint>) -> Result<Self> {
        for w in factors.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(Error::Malformed("factors do not form a chain".into()));
            }
        }
        if factors.iter().any(|f| *f <= BigUint::one()) {
            return Err(Error::Malformed("invariant factor < 2".into()));
        }
        Ok(FinAbGroup {
            factors,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.factors.len());
        self.labels = Some(labels);
        self
    }

    pub fn invariant_factors(&self) -> &[BigUint] {
        &self.factors
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> BigUint {
        self.factors.iter().product()
    }

    /// Invariant factors as exponents of a prime ℓ; `None` if some factor is
    /// not a power of ℓ.
    pub fn ell_exponents(&self, ell: u64) -> Option<Vec<u32>> {
        let l = BigUint::from(ell);
        let mut out = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            let mut f = f.clone();
            let mut e = 0u32;
            while (&f % &l).is_zero() {
                f /= &l;
                e += 1;
            }
            if !f.is_one() {
                return None;
            }
            out.push(e);
        }
        Some(out)
    }
}

fn push_prime_power(by_prime: &mut Vec<(BigUint, Vec<u32>)>, p: &BigUint, e: u32) {
    match by_prime.iter_mut().find(|(q, _)| q == p) {
        Some((_, es)) => {
            // keep descending
            let pos = es.partition_point(|&x| x >= e);
            es.insert(pos, e);
        }
        None => by_prime.push((p.clone(), vec![e])),
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "Z/{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAbGroup({self})")
    }
}

/// Cokernel of the column lattice of `m` inside `Z^rows`: finite part as a
/// group, free rank reported separately.
pub fn cokernel(m: &IntMatrix) -> (FinAbGroup, usize) {
    let snf = smith_normal_form(m);
    let diag = snf_diagonal(&snf.s);
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let rank = m.rows() - nonzero;
    let factors: Vec<BigUint> = diag
        .iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .map(|d| d.to_biguint().expect("snf diagonal is nonnegative"))
        .collect();
    // SNF already yields a divisibility chain.
    (
        FinAbGroup::from_invariant_factors(factors).expect("snf chain"),
        rank,
    )
}

/// The ℓ-primary part of a finite abelian group.
pub fn ell_sylow(g: &FinAbGroup, ell: u64) -> Result<FinAbGroup> {
    if ell < 2 || !is_prime_u64(ell) {
        return Err(Error::InvalidPrime(ell));
    }
    let l = BigUint::from(ell);
    let mut factors = Vec::new();
    for d in g.invariant_factors() {
        let mut part = BigUint::one();
        let mut rest = d.clone();
        while (&rest % &l).is_zero() {
            rest /= &l;
            part *= &l;
        }
        if !part.is_one() {
            factors.push(part);
        }
    }
    factors.sort();
    FinAbGroup::from_invariant_factors(factors)
}

/// Trial-division primality, adequate for desk-scale moduli.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Alternating square `Λ²G` with its pair basis.
///
/// For `G = ⊕ Z/d_i` (chain order) the alternating square is
/// `⊕_{i<j} Z/gcd(d_i, d_j)` on generators `e_i ∧ e_j`; with the chain in
/// force `gcd(d_i, d_j) = d_i` for `i < j`, so the lexicographic pair order
/// is already an invariant-factor chain.
pub fn alternating_square(g: &FinAbGroup) -> (FinAbGroup, Vec<(usize, usize)>) {
    let d = g.invariant_factors();
    let k = d.len();
    let mut factors = Vec::new();
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            factors.push(d[i].gcd(&d[j]));
            pairs.push((i, j));
        }
    }
    let labels = pairs
        .iter()
        .map(|&(i, j)| {
            let mut s = String::new();
            fmt::write(&mut s, format_args!("e{}^e{}", i + 1, j + 1)).ok();
            s
        })
        .collect();
    let group = FinAbGroup::from_invariant_factors(factors)
        .expect("pairwise gcds of a chain form a chain")
        .with_labels(labels);
    (group, pairs)
}

/// Homomorphism between groups in invariant-factor form.
///
/// `matrix` is `codomain.rank() × domain.rank()`; column `j` is the exponent
/// vector of the image of domain generator `j`. Stored un-reduced;
/// [`GroupHom::validate`] checks the order relations.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub domain: FinAbGroup,
    pub codomain: FinAbGroup,
    pub matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(domain: FinAbGroup, codomain: FinAbGroup, matrix: IntMatrix) -> Self {
        GroupHom {
            domain,
            codomain,
            matrix,
        }
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        GroupHom {
            domain: g.clone(),
            codomain: g.clone(),
            matrix: IntMatrix::identity(g.rank()),
        }
    }

    /// Hom whose image is the subgroup generated by the given exponent
    /// vectors. The domain is a direct sum of cyclic groups of the
    /// codomain's exponent, one per image, so the order relations hold for
    /// any images; the alternating-square image (which is all the knot
    /// computation needs) depends only on the generated subgroup.
    pub fn from_generator_images(codomain: &FinAbGroup, images: &[Vec<BigInt>]) -> Result<Self> {
        let cod = codomain.invariant_factors();
        for w in images {
            if w.len() != cod.len() {
                return Err(Error::MalformedHom(
                    "image vector length does not match the group rank".into(),
                ));
            }
        }
        if images.is_empty() || cod.is_empty() {
            return Ok(GroupHom::new(
                FinAbGroup::trivial(),
                codomain.clone(),
                IntMatrix::new(codomain.rank(), 0),
            ));
        }
        let exponent = cod.last().expect("nonempty").clone();
        let orders = vec![exponent; images.len()];
        let domain = FinAbGroup::from_invariant_factors(orders)?;
        let mut m = IntMatrix::new(codomain.rank(), images.len());
        for (col, w) in images.iter().enumerate() {
            for (row, c) in w.iter().enumerate() {
                m[(row, col)] = c.clone();
            }
        }
        let hom = GroupHom::new(domain, codomain.clone(), m);
        hom.validate()?;
        Ok(hom)
    }

    /// Check that each generator's order kills its image: for domain order
    /// `d_j`, codomain orders `D_i`, require `D_i | d_j · m_ij`.
    pub fn validate(&self) -> Result<()> {
        if self.matrix.rows() != self.codomain.rank() || self.matrix.cols() != self.domain.rank() {
            return Err(Error::MalformedHom("matrix shape mismatch".into()));
        }
        let dom = self.domain.invariant_factors();
        let cod = self.codomain.invariant_factors();
        for j in 0..dom.len() {
            let dj = BigInt::from(dom[j].clone());
            for i in 0..cod.len() {
                let di = BigInt::from(cod[i].clone());
                if !((&dj * &self.matrix[(i, j)]) % &di).is_zero() {
                    return Err(Error::MalformedHom(
                        "column violates generator order".to_string(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// The induced map `Λ²φ` on alternating squares, on the pair bases.
///
/// Entry at (pair (a,b), pair (i,j)) is the 2×2 minor
/// `m_ai·m_bj − m_aj·m_bi`.
pub fn induced_alt_map(phi: &GroupHom) -> Result<GroupHom> {
    phi.validate()?;
    let (dom_sq, dom_pairs) = alternating_square(&phi.domain);
    let (cod_sq, cod_pairs) = alternating_square(&phi.codomain);
    let m = &phi.matrix;
    let mut out = IntMatrix::new(cod_pairs.len(), dom_pairs.len());
    for (col, &(i, j)) in dom_pairs.iter().enumerate() {
        for (row, &(a, b)) in cod_pairs.iter().enumerate() {
            out[(row, col)] = &m[(a, i)] * &m[(b, j)] - &m[(a, j)] * &m[(b, i)];
        }
    }
    Ok(GroupHom::new(dom_sq, cod_sq, out))
}

/// Knot group of an abelian extension with Galois group `G` and decomposition
/// subgroups given by homs into `G`:
/// the quotient of `Λ²G` by the sum of the images of the induced maps.
pub fn knot_group(g: &FinAbGroup, decomposition: &[GroupHom]) -> Result<FinAbGroup> {
    let (sq, _) = alternating_square(g);
    let n = sq.rank();
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    // Order relations of Λ²G.
    for (i, d) in sq.invariant_factors().iter().enumerate() {
        let mut c = vec![BigInt::zero(); n];
        c[i] = BigInt::from(d.clone());
        cols.push(c);
    }
    for phi in decomposition {
        if phi.codomain != *g {
            return Err(Error::MalformedHom(
                "decomposition subgroup maps into a different group".into(),
            ));
        }
        let ind = induced_alt_map(phi)?;
        for j in 0..ind.matrix.cols() {
            cols.push((0..n).map(|i| ind.matrix[(i, j)].clone()).collect());
        }
    }
    // Relations as columns of one presentation matrix.
    let mut m = IntMatrix::new(n, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for i in 0..n {
            m[(i, j)] = c[i].clone();
        }
    }
    let (group, rank) = cokernel(&m);
    debug_assert_eq!(rank, 0);
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf_diag_i64(m: &IntMatrix) -> Vec<i64> {
        let snf = smith_normal_form(m);
        // verify the factorization and the chain on every call
        assert_eq!(snf.u.mul(m).mul(&snf.v), snf.s);
        assert!(snf.u.determinant().abs().is_one());
        assert!(snf.v.determinant().abs().is_one());
        let d = snf_diagonal(&snf.s);
        for w in d.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "chain broken: {w:?}");
            } else {
                assert!(w[1].is_zero());
            }
        }
        d.iter().map(|x| x.try_into().unwrap()).collect()
    }

    #[test]
    fn snf_small_pins() {
        let m = IntMatrix::from_i64(2, 2, &[2, 4, 6, 8]);
        assert_eq!(snf_diag_i64(&m), vec![2, 4]);

        let id = IntMatrix::identity(3);
        assert_eq!(snf_diag_i64(&id), vec![1, 1, 1]);

        let z = IntMatrix::new(2, 2);
        assert_eq!(snf_diag_i64(&z), vec![0, 0]);
    }

    #[test]
    fn snf_rectangular() {
        let m = IntMatrix::from_i64(2, 3, &[2, 4, 4, -6, 6, 12]);
        let d = snf_diag_i64(&m);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0], 2);
    }

    #[test]
    fn cokernel_pins() {
        let (g, r) = cokernel(&IntMatrix::from_i64(2, 2, &[2, 0, 0, 4]));
        assert_eq!(g, FinAbGroup::from_u64_orders(&[2, 4]).unwrap());
        assert_eq!(r, 0);

        let (g, r) = cokernel(&IntMatrix::from_i64(2, 1, &[3, 0]));
        assert_eq!(g, FinAbGroup::from_u64_orders(&[3]).unwrap());
        assert_eq!(r, 1);

        let (g, r) = cokernel(&IntMatrix::new(2, 0));
        assert!(g.is_trivial());
        assert_eq!(r, 2);
    }

    #[test]
    fn from_orders_normalizes() {
        // Z/6 x Z/4 = Z/2 x Z/12
        let g = FinAbGroup::from_u64_orders(&[6, 4]).unwrap();
        assert_eq!(g, FinAbGroup::from_u64_orders(&[2, 12]).unwrap());
        assert_eq!(g.order(), BigUint::from(24u32));
    }

    #[test]
    fn ell_sylow_pins() {
        let g = FinAbGroup::from_u64_orders(&[6, 12]).unwrap();
        assert_eq!(
            ell_sylow(&g, 3).unwrap(),
            FinAbGroup::from_u64_orders(&[3, 3]).unwrap()
        );
        let g = FinAbGroup::from_u64_orders(&[4]).unwrap();
        assert!(ell_sylow(&g, 3).unwrap().is_trivial());
        let g = FinAbGroup::from_u64_orders(&[9]).unwrap();
        assert_eq!(
            ell_sylow(&g, 3).unwrap(),
            FinAbGroup::from_u64_orders(&[9]).unwrap()
        );
        assert!(ell_sylow(&g, 4).is_err());
    }

    #[test]
    fn alternating_square_pins() {
        let cyc = FinAbGroup::from_u64_orders(&[12]).unwrap();
        assert!(alternating_square(&cyc).0.is_trivial());

        let g = FinAbGroup::from_u64_orders(&[3, 3]).unwrap();
        let (sq, pairs) = alternating_square(&g);
        assert_eq!(sq, FinAbGroup::from_u64_orders(&[3]).unwrap());
        assert_eq!(pairs, vec![(0, 1)]);

        let g = FinAbGroup::from_u64_orders(&[3, 9]).unwrap();
        assert_eq!(
            alternating_square(&g).0,
            FinAbGroup::from_u64_orders(&[3]).unwrap()
        );
    }

    #[test]
    fn induced_map_functorial() {
        let g = FinAbGroup::from_u64_orders(&[3, 3]).unwrap();
        let id = GroupHom::identity(&g);
        let ind = induced_alt_map(&id).unwrap();
        assert_eq!(ind.matrix, IntMatrix::identity(1));

        // swap of the two generators negates e1 ∧ e2
        let swap = GroupHom::new(
            g.clone(),
            g.clone(),
            IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]),
        );
        let ind = induced_alt_map(&swap).unwrap();
        assert_eq!(ind.matrix[(0, 0)], BigInt::from(-1));

        // inclusion of a cyclic subgroup has trivial domain square
        let c3 = FinAbGroup::from_u64_orders(&[3]).unwrap();
        let incl = GroupHom::new(c3, g, IntMatrix::from_i64(2, 1, &[1, 0]));
        let ind = induced_alt_map(&incl).unwrap();
        assert_eq!(ind.matrix.cols(), 0);
    }

    #[test]
    fn hom_validation() {
        let c3 = FinAbGroup::from_u64_orders(&[3]).unwrap();
        let c9 = FinAbGroup::from_u64_orders(&[9]).unwrap();
        // Z/3 → Z/9 sending e to an order-9 element is not a hom
        let bad = GroupHom::new(c3.clone(), c9.clone(), IntMatrix::from_i64(1, 1, &[1]));
        assert!(bad.validate().is_err());
        // e ↦ 3·f is fine
        let good = GroupHom::new(c3, c9, IntMatrix::from_i64(1, 1, &[3]));
        assert!(good.validate().is_ok());
    }

    #[test]
    fn knot_group_pins() {
        let g = FinAbGroup::from_u64_orders(&[3, 3]).unwrap();
        let c3 = FinAbGroup::from_u64_orders(&[3]).unwrap();
        let sub1 = GroupHom::new(c3.clone(), g.clone(), IntMatrix::from_i64(2, 1, &[1, 0]));
        let sub2 = GroupHom::new(c3.clone(), g.clone(), IntMatrix::from_i64(2, 1, &[0, 1]));
        // cyclic decomposition groups contribute nothing
        let k = knot_group(&g, &[sub1, sub2]).unwrap();
        assert_eq!(k, FinAbGroup::from_u64_orders(&[3]).unwrap());

        // the full group as a decomposition subgroup kills everything
        let full = GroupHom::identity(&g);
        assert!(knot_group(&g, &[full]).unwrap().is_trivial());

        // cyclic G: alternating square already trivial
        let cyc = FinAbGroup::from_u64_orders(&[27]).unwrap();
        let sub = GroupHom::new(c3, cyc.clone(), IntMatrix::from_i64(1, 1, &[9]));
        assert!(knot_group(&cyc, &[sub]).unwrap().is_trivial());
    }

    #[test]
    fn hom_from_generator_images() {
        let g = FinAbGroup::from_u64_orders(&[3, 9]).unwrap();
        let images = vec![vec![BigInt::from(1), BigInt::from(3)]];
        let hom = GroupHom::from_generator_images(&g, &images).unwrap();
        hom.validate().unwrap();
        // knot of G by that cyclic subgroup: Λ²G = Z/3 survives
        let k = knot_group(&g, &[hom]).unwrap();
        assert_eq!(k, FinAbGroup::from_u64_orders(&[3]).unwrap());

        // two generators spanning everything kill the square
        let full = GroupHom::from_generator_images(
            &g,
            &[
                vec![BigInt::from(1), BigInt::from(0)],
                vec![BigInt::from(0), BigInt::from(1)],
            ],
        )
        .unwrap();
        assert!(knot_group(&g, &[full]).unwrap().is_trivial());

        // mixed-prime codomain: exponent-padded domain stays valid
        let h = FinAbGroup::from_u64_orders(&[2, 12]).unwrap();
        let hom = GroupHom::from_generator_images(
            &h,
            &[
                vec![BigInt::from(1), BigInt::from(2)],
                vec![BigInt::from(0), BigInt::from(3)],
            ],
        )
        .unwrap();
        hom.validate().unwrap();
    }

    #[test]
    fn knot_group_rejects_wrong_codomain() {
        let g = FinAbGroup::from_u64_orders(&[3, 3]).unwrap();
        let h = FinAbGroup::from_u64_orders(&[9, 9]).unwrap();
        let bad = GroupHom::identity(&h);
        assert!(knot_group(&g, &[bad]).is_err());
    }

    #[test]
    fn row_span_membership() {
        let b = IntMatrix::from_i64(2, 3, &[1, 2, 3, 0, 4, 2]);
        let v1: Vec<BigInt> = [1, 6, 5].iter().map(|&x| BigInt::from(x)).collect();
        assert!(in_row_span(&b, &v1));
        let v2: Vec<BigInt> = [0, 2, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert!(!in_row_span(&b, &v2));
    }
}
