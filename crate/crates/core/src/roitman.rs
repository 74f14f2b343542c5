//! Alternating multilinear forms over `ℚ`, summed pullbacks along block projections, and
//! the dimension bound for isotropic subspaces of `Ω = Σⱼ prⱼ*ωⱼ`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::abelian::{int, rational_string, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RoitmanError {
    #[error("block {0} has dimension zero")]
    EmptyBlock(usize),
    #[error("the form on block {0} is zero")]
    ZeroBlockForm(usize),
    #[error("expected {expected} forms or arguments, got {got}")]
    CountMismatch { expected: usize, got: usize },
    #[error("expected arity {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("expected dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("basis vectors are linearly dependent")]
    RankDeficient,
    #[error("subspace is not isotropic")]
    NotIsotropic,
}

/// `V = V₁ ⊕ … ⊕ V_m` over `ℚ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    dims: Vec<usize>,
}

impl GradedSpace {
    pub fn new(dims: Vec<usize>) -> Result<Self, RoitmanError> {
        if let Some(j) = dims.iter().position(|&d| d == 0) {
            return Err(RoitmanError::EmptyBlock(j));
        }
        Ok(GradedSpace { dims })
    }

    pub fn blocks(&self) -> &[usize] {
        &self.dims
    }

    pub fn block_count(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn offset(&self, j: usize) -> usize {
        self.dims[..j].iter().sum()
    }
}

/// An alternating `q`-form on `ℚⁿ`, stored by its values on increasing basis `q`-tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingForm {
    dim: usize,
    arity: usize,
    coeffs: BTreeMap<Vec<usize>, Rational>,
}

/// Sorts `indices`, returning the sign of the permutation, or `None` on a repeat.
fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = indices.to_vec();
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

impl AlternatingForm {
    pub fn zero(dim: usize, arity: usize) -> Self {
        AlternatingForm { dim, arity, coeffs: BTreeMap::new() }
    }

    /// Adds `c·e^{i₁}∧…∧e^{i_q}`.
    pub fn add_term(&mut self, indices: &[usize], c: Rational) -> Result<(), RoitmanError> {
        if indices.len() != self.arity {
            return Err(RoitmanError::ArityMismatch { expected: self.arity, got: indices.len() });
        }
        if let Some(&index) = indices.iter().find(|&&i| i >= self.dim) {
            return Err(RoitmanError::IndexOutOfRange { index, dim: self.dim });
        }
        let Some((key, odd)) = sort_with_sign(indices) else { return Ok(()) };
        let c = if odd { -c } else { c };
        let entry = self.coeffs.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
        Ok(())
    }

    pub fn with_term(mut self, indices: &[usize], c: Rational) -> Result<Self, RoitmanError> {
        self.add_term(indices, c)?;
        Ok(self)
    }

    /// `∫_{Tⁿ} α₁ ∪ … ∪ αₙ` on `H¹(Tⁿ; ℚ)` in the basis `dx₁, …, dxₙ`: the determinant.
    pub fn torus_cup_form(n: usize) -> Self {
        let mut f = Self::zero(n, n);
        f.coeffs.insert((0..n).collect(), Rational::one());
        f
    }

    /// `∫_Σ α ∪ β` on `H¹` of a genus-`g` surface in a symplectic basis `a₁, b₁, …`.
    pub fn surface_cup_form(genus: usize) -> Self {
        let mut f = Self::zero(2 * genus, 2);
        for i in 0..genus {
            f.coeffs.insert(vec![2 * i, 2 * i + 1], Rational::one());
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.coeffs.iter()
    }

    /// The value on basis vectors `e_{i₁}, …, e_{i_q}`.
    pub fn coefficient(&self, indices: &[usize]) -> Rational {
        match sort_with_sign(indices) {
            Some((key, odd)) => {
                let c = self.coeffs.get(&key).cloned().unwrap_or_else(Rational::zero);
                if odd {
                    -c
                } else {
                    c
                }
            }
            None => Rational::zero(),
        }
    }

    pub fn evaluate(&self, vectors: &[Vec<Rational>]) -> Result<Rational, RoitmanError> {
        if vectors.len() != self.arity {
            return Err(RoitmanError::CountMismatch { expected: self.arity, got: vectors.len() });
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != self.dim) {
            return Err(RoitmanError::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        let mut total = Rational::zero();
        for (key, c) in &self.coeffs {
            let minor: Vec<Vec<Rational>> = vectors.iter().map(|v| key.iter().map(|&i| v[i].clone()).collect()).collect();
            total += c * determinant(minor);
        }
        Ok(total)
    }

    /// The pullback along the projection `ℚ^{dim} → ℚⁿ` onto coordinates `offset..offset+n`.
    pub fn pullback_into(&self, dim: usize, offset: usize) -> Result<Self, RoitmanError> {
        if offset + self.dim > dim {
            return Err(RoitmanError::DimensionMismatch { expected: dim, got: offset + self.dim });
        }
        let coeffs = self.coeffs.iter().map(|(k, c)| (k.iter().map(|i| i + offset).collect(), c.clone())).collect();
        Ok(AlternatingForm { dim, arity: self.arity, coeffs })
    }
}

impl std::ops::Add for &AlternatingForm {
    type Output = AlternatingForm;
    fn add(self, other: &AlternatingForm) -> AlternatingForm {
        assert_eq!((self.dim, self.arity), (other.dim, other.arity), "forms on different spaces");
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(k, c.clone()).expect("same shape");
        }
        out
    }
}

impl fmt::Display for AlternatingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| {
                let idx: Vec<String> = k.iter().map(|i| format!("e{}", i + 1)).collect();
                format!("{}*{}", rational_string(c), idx.join("^"))
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else { return Rational::zero() };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..cols {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn rank(vectors: &[Vec<Rational>], dim: usize) -> usize {
    let mut rows = vectors.to_vec();
    rref(&mut rows, dim).len()
}

/// A basis of `{v : f(v) = 0 for every row f}`.
fn null_space(mut rows: Vec<Vec<Rational>>, dim: usize) -> Vec<Vec<Rational>> {
    let pivots = rref(&mut rows, dim);
    (0..dim)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); dim];
            v[free] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rows[r][free].clone();
            }
            v
        })
        .collect()
}

/// A subspace of `ℚⁿ` given by a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn new(ambient: usize, basis: Vec<Vec<Rational>>) -> Result<Self, RoitmanError> {
        if let Some(v) = basis.iter().find(|v| v.len() != ambient) {
            return Err(RoitmanError::DimensionMismatch { expected: ambient, got: v.len() });
        }
        if rank(&basis, ambient) != basis.len() {
            return Err(RoitmanError::RankDeficient);
        }
        Ok(Subspace { ambient, basis })
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Subspace { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut all = self.basis.clone();
        all.push(v.to_vec());
        rank(&all, self.ambient) == self.basis.len()
    }

    /// The same subspace with the basis replaced by `Σⱼ mᵢⱼ wⱼ`.
    pub fn rebased(&self, m: &[Vec<Rational>]) -> Result<Self, RoitmanError> {
        let basis = m
            .iter()
            .map(|row| {
                let mut v = vec![Rational::zero(); self.ambient];
                for (c, w) in row.iter().zip(&self.basis) {
                    for (x, y) in v.iter_mut().zip(w) {
                        *x += c * y;
                    }
                }
                v
            })
            .collect();
        Subspace::new(self.ambient, basis)
    }
}

/// `Ω = Σⱼ prⱼ*ωⱼ` on `V = ⊕ Vⱼ`.
pub fn summed_pullback(space: &GradedSpace, forms: &[AlternatingForm]) -> Result<AlternatingForm, RoitmanError> {
    if forms.len() != space.block_count() {
        return Err(RoitmanError::CountMismatch { expected: space.block_count(), got: forms.len() });
    }
    let arity = forms.first().map_or(0, |f| f.arity);
    let mut omega = AlternatingForm::zero(space.dim(), arity);
    for (j, (f, &d)) in forms.iter().zip(space.blocks()).enumerate() {
        if f.dim != d {
            return Err(RoitmanError::DimensionMismatch { expected: d, got: f.dim });
        }
        if f.arity != arity {
            return Err(RoitmanError::ArityMismatch { expected: arity, got: f.arity });
        }
        if f.is_zero() {
            return Err(RoitmanError::ZeroBlockForm(j));
        }
        omega = &omega + &f.pullback_into(space.dim(), space.offset(j))?;
    }
    Ok(omega)
}

/// Increasing `k`-subsets of `0..n`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn is_isotropic(w: &Subspace, omega: &AlternatingForm) -> Result<bool, RoitmanError> {
    if w.ambient != omega.dim {
        return Err(RoitmanError::DimensionMismatch { expected: omega.dim, got: w.ambient });
    }
    for s in subsets(w.dim(), omega.arity) {
        let args: Vec<Vec<Rational>> = s.iter().map(|&i| w.basis[i].clone()).collect();
        if !omega.evaluate(&args)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The vectors `v` with `W + ℚv` isotropic, given `W` isotropic.
pub fn isotropic_extensions(w: &Subspace, omega: &AlternatingForm) -> Result<Vec<Vec<Rational>>, RoitmanError> {
    if w.ambient != omega.dim {
        return Err(RoitmanError::DimensionMismatch { expected: omega.dim, got: w.ambient });
    }
    let n = omega.dim;
    let q = omega.arity;
    if q == 0 {
        return Ok(Vec::new());
    }
    let unit = |k: usize| (0..n).map(|j| if j == k { Rational::one() } else { Rational::zero() }).collect::<Vec<_>>();
    let mut rows = Vec::new();
    for s in subsets(w.dim(), q - 1) {
        let mut args: Vec<Vec<Rational>> = s.iter().map(|&i| w.basis[i].clone()).collect();
        args.push(Vec::new());
        let row = (0..n)
            .map(|k| {
                args[q - 1] = unit(k);
                omega.evaluate(&args)
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(null_space(rows, n))
}

/// Extends `start` by random admissible vectors until it has dimension `target` or no
/// isotropic extension exists.
pub fn extend_isotropic(
    start: Subspace,
    omega: &AlternatingForm,
    target: usize,
    rng: &mut impl Rng,
) -> Result<Subspace, RoitmanError> {
    if !is_isotropic(&start, omega)? {
        return Err(RoitmanError::NotIsotropic);
    }
    let mut w = start;
    while w.dim() < target {
        let ext = isotropic_extensions(&w, omega)?;
        let mut pick = None;
        for _ in 0..8 {
            let mut v = vec![Rational::zero(); w.ambient];
            for e in &ext {
                let c = int(rng.gen_range(-2..=2));
                for (x, y) in v.iter_mut().zip(e) {
                    *x += &c * y;
                }
            }
            if !w.contains(&v) {
                pick = Some(v);
                break;
            }
        }
        let pick = pick.or_else(|| ext.into_iter().find(|e| !w.contains(e)));
        let Some(v) = pick else { break };
        let mut basis = w.basis.clone();
        basis.push(v);
        w = Subspace::new(w.ambient, basis)?;
    }
    Ok(w)
}

/// Whether no vector outside `W` extends it to a larger isotropic subspace.
pub fn is_maximal_isotropic(w: &Subspace, omega: &AlternatingForm) -> Result<bool, RoitmanError> {
    Ok(is_isotropic(w, omega)? && isotropic_extensions(w, omega)?.iter().all(|e| w.contains(e)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub holds: bool,
    /// `dim V − m − dim W`.
    pub slack: i64,
}

pub fn check_bound(space: &GradedSpace, forms: &[AlternatingForm], w: &Subspace) -> Result<BoundCheck, RoitmanError> {
    let omega = summed_pullback(space, forms)?;
    if !is_isotropic(w, &omega)? {
        return Err(RoitmanError::NotIsotropic);
    }
    let slack = space.dim() as i64 - space.block_count() as i64 - w.dim() as i64;
    Ok(BoundCheck { holds: slack >= 0, slack })
}

/// A nonzero alternating `q`-form on `ℚᵈ` with small integer coefficients.
pub fn random_form(d: usize, q: usize, rng: &mut impl Rng) -> AlternatingForm {
    let mut f = AlternatingForm::zero(d, q);
    for s in subsets(d, q) {
        if rng.gen_bool(0.6) {
            f.add_term(&s, int(rng.gen_range(-2..=2))).expect("valid indices");
        }
    }
    if f.is_zero() {
        let s: Vec<usize> = (0..q).collect();
        f.add_term(&s, Rational::one()).expect("valid indices");
    }
    f
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TrialReport {
    pub trials: usize,
    pub violations: Vec<String>,
    pub min_slack: Option<i64>,
    pub tight_instances: usize,
    pub tight_failures: Vec<String>,
}

impl TrialReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty() && self.tight_failures.is_empty()
    }
}

/// Random instances with `q ∈ {2, 3}`, `m ≤ 3` blocks of dimension in `[q, 4]`, and random
/// isotropic subspaces built by greedy extension; then all-symplectic-plane instances with
/// `m ≤ 6`, where a maximal isotropic subspace must have dimension exactly `dim V − m`.
/// Trial `i` uses stream `i` of the seeded generator.
pub fn bound_trials(seed: u64, trials: usize) -> Result<TrialReport, RoitmanError> {
    let mut report = TrialReport { trials, ..Default::default() };
    for i in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let q = rng.gen_range(2..=3);
        let m = rng.gen_range(1..=3);
        let dims: Vec<usize> = (0..m).map(|_| rng.gen_range(q..=4)).collect();
        let space = GradedSpace::new(dims.clone())?;
        let forms: Vec<AlternatingForm> = dims.iter().map(|&d| random_form(d, q, &mut rng)).collect();
        let omega = summed_pullback(&space, &forms)?;
        let target = rng.gen_range(0..=space.dim());
        let w = extend_isotropic(Subspace::zero(space.dim()), &omega, target, &mut rng)?;
        let check = check_bound(&space, &forms, &w)?;
        report.min_slack = Some(report.min_slack.map_or(check.slack, |s| s.min(check.slack)));
        if !check.holds {
            report.violations.push(format!("trial {i}: q={q}, blocks {dims:?}, dim W={}", w.dim()));
        }
    }
    for m in 1..=6 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(u64::MAX - m as u64);
        let space = GradedSpace::new(vec![2; m])?;
        let forms = vec![AlternatingForm::surface_cup_form(1); m];
        let omega = summed_pullback(&space, &forms)?;
        let w = extend_isotropic(Subspace::zero(space.dim()), &omega, space.dim(), &mut rng)?;
        report.tight_instances += 1;
        if w.dim() != space.dim() - m || !is_maximal_isotropic(&w, &omega)? {
            report.tight_failures.push(format!("{m} symplectic planes: maximal isotropic dimension {}", w.dim()));
        }
    }
    Ok(report)
}
