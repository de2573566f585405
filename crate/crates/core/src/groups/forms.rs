//! Spaces carrying a symplectic or Hermitian form, and similitudes of them.

use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::GroupError;
use crate::residue::{classify_prime, Field, InertField, PrimeField, Splitting};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    /// Alternating bilinear form over Z/ℓ.
    Symplectic,
    /// Hermitian form over F_{ℓ²} (ℓ inert).
    Hermitian,
    /// Hermitian form over Z[ω]/ℓ ≅ Z/ℓ × Z/ℓ (ℓ split), written on
    /// V(λ) ⊕ V(λ̄) as the symmetric pairing [[0, I], [I, 0]].  Isometries
    /// must preserve the decomposition.
    SplitHermitian,
    None,
}

#[derive(Debug, Clone)]
pub struct FormedSpace<F: Field> {
    field: F,
    dim: usize,
    kind: FormKind,
    gram: Matrix<F::Elem>,
    /// Archimedean signature label (r, s); it does not change the finite group.
    signature: Option<(u32, u32)>,
}

impl<F: Field> FormedSpace<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn gram(&self) -> &Matrix<F::Elem> {
        &self.gram
    }

    pub fn signature(&self) -> Option<(u32, u32)> {
        self.signature
    }

    pub fn with_signature(mut self, r: u32, s: u32) -> Self {
        self.signature = Some((r, s));
        self
    }

    /// A space with no form: the ambient group is SL.
    pub fn plain(field: F, dim: usize) -> Self {
        let gram = Matrix::identity(&field, dim);
        Self { field, dim, kind: FormKind::None, gram, signature: None }
    }

    fn check_dim(&self, m: &Matrix<F::Elem>) -> Result<(), GroupError> {
        if m.dim() != self.dim {
            return Err(GroupError::DimensionMismatch { expected: self.dim, found: m.dim() });
        }
        Ok(())
    }

    /// The scalar m with M*·G·M = m·G, or `None` if M is not a similitude.
    pub fn form_multiplier(&self, m: &Matrix<F::Elem>) -> Result<Option<F::Elem>, GroupError> {
        self.check_dim(m)?;
        let f = &self.field;
        let lhs = match self.kind {
            FormKind::None => return Err(GroupError::NoForm),
            FormKind::Symplectic | FormKind::SplitHermitian => {
                m.transpose().mul(f, &self.gram).mul(f, m)
            }
            FormKind::Hermitian => m.adjoint(f).mul(f, &self.gram).mul(f, m),
        };
        if self.kind == FormKind::SplitHermitian && !is_block_diagonal(f, m, self.dim / 2) {
            return Ok(None);
        }
        let n = self.dim;
        let Some((i0, j0)) = (0..n * n)
            .map(|k| (k / n, k % n))
            .find(|&(i, j)| !f.is_zero(self.gram.get(i, j)))
        else {
            return Ok(None);
        };
        let g0 = self.gram.get(i0, j0);
        let mult = f.mul(lhs.get(i0, j0), f.inv(g0).expect("nonzero gram entry"));
        if lhs != self.gram.scale(f, mult) {
            return Ok(None);
        }
        if self.kind == FormKind::Hermitian && f.conj(mult) != mult {
            return Ok(None);
        }
        Ok(Some(mult))
    }

    /// Membership in the special isometry group of the space (SL when there
    /// is no form).  In the split Hermitian case the determinant is taken in
    /// Z[ω]/ℓ, so both diagonal blocks must have determinant 1.
    pub fn contains(&self, m: &Matrix<F::Elem>) -> Result<bool, GroupError> {
        self.check_dim(m)?;
        let f = &self.field;
        if m.det(f) != f.one() {
            return Ok(false);
        }
        match self.kind {
            FormKind::None => Ok(true),
            FormKind::SplitHermitian => {
                if self.form_multiplier(m)? != Some(f.one()) {
                    return Ok(false);
                }
                Ok(upper_block(f, m, self.dim / 2).det(f) == f.one())
            }
            _ => Ok(self.form_multiplier(m)? == Some(f.one())),
        }
    }
}

fn is_block_diagonal<F: Field>(f: &F, m: &Matrix<F::Elem>, g: usize) -> bool {
    (0..g).all(|i| (0..g).all(|j| f.is_zero(m.get(i, g + j)) && f.is_zero(m.get(g + i, j))))
}

/// Top-left g×g block.
pub fn upper_block<F: Field>(f: &F, m: &Matrix<F::Elem>, g: usize) -> Matrix<F::Elem> {
    let mut out = Matrix::zero(f, g);
    for i in 0..g {
        for j in 0..g {
            out.set(i, j, m.get(i, j));
        }
    }
    out
}

/// Bottom-right block of size dim − g.
pub fn lower_block<F: Field>(f: &F, m: &Matrix<F::Elem>, g: usize) -> Matrix<F::Elem> {
    let k = m.dim() - g;
    let mut out = Matrix::zero(f, k);
    for i in 0..k {
        for j in 0..k {
            out.set(i, j, m.get(g + i, g + j));
        }
    }
    out
}

fn odd_prime_field(ell: u32) -> Result<PrimeField, GroupError> {
    let field = PrimeField::new(ell)?;
    if ell == 2 {
        return Err(GroupError::EvenCharacteristic);
    }
    Ok(field)
}

/// Dimension 2g over Z/ℓ with basis e₁, f₁, …, e_g, f_g and ⟨e_i, f_i⟩ = 1.
pub fn standard_symplectic_space(g: usize, ell: u32) -> Result<FormedSpace<PrimeField>, GroupError> {
    if g == 0 {
        return Err(GroupError::InvalidDimension(0));
    }
    let field = odd_prime_field(ell)?;
    let n = 2 * g;
    let mut gram = Matrix::zero(&field, n);
    for i in 0..g {
        gram.set(2 * i, 2 * i + 1, 1);
        gram.set(2 * i + 1, 2 * i, ell - 1);
    }
    Ok(FormedSpace { field, dim: n, kind: FormKind::Symplectic, gram, signature: None })
}

/// F_{ℓ²}^n with the identity Hermitian form.
pub fn standard_hermitian_space(n: usize, ell: u32) -> Result<FormedSpace<InertField>, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidDimension(0));
    }
    match classify_prime(ell)?.splitting() {
        Splitting::Ramified => return Err(GroupError::RamifiedUnitary),
        Splitting::Split => return Err(GroupError::WrongSplitting(ell)),
        Splitting::Inert if ell == 2 => return Err(GroupError::EvenCharacteristic),
        Splitting::Inert => {}
    }
    let field = InertField::new(ell)?;
    let gram = Matrix::identity(&field, n);
    Ok(FormedSpace { field, dim: n, kind: FormKind::Hermitian, gram, signature: None })
}

/// (Z[ω]/ℓ)^g for split ℓ, realized on V(λ) ⊕ V(λ̄) = (Z/ℓ)^{2g}.
pub fn split_hermitian_space(g: usize, ell: u32) -> Result<FormedSpace<PrimeField>, GroupError> {
    if g == 0 {
        return Err(GroupError::InvalidDimension(0));
    }
    match classify_prime(ell)?.splitting() {
        Splitting::Ramified => return Err(GroupError::RamifiedUnitary),
        Splitting::Inert => return Err(GroupError::WrongSplitting(ell)),
        Splitting::Split => {}
    }
    let field = PrimeField::new(ell)?;
    let mut gram = Matrix::zero(&field, 2 * g);
    for i in 0..g {
        gram.set(i, g + i, 1);
        gram.set(g + i, i, 1);
    }
    Ok(FormedSpace { field, dim: 2 * g, kind: FormKind::SplitHermitian, gram, signature: None })
}

/// τ ↦ diag(τ, ᵗτ⁻¹) on V(λ) ⊕ V(λ̄).
pub fn split_embed(
    field: &PrimeField,
    tau: &Matrix<u32>,
) -> Result<Matrix<u32>, GroupError> {
    let ell = field.characteristic();
    if classify_prime(ell)?.splitting() != Splitting::Split {
        return Err(GroupError::WrongSplitting(ell));
    }
    let inv = tau.inverse(field).ok_or(GroupError::NotInvertible)?;
    Ok(tau.direct_sum(field, &inv.transpose()))
}

/// Which summands of V₁ ⊕ V₂ ⊕ V₃ a block acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SummandPair(pub usize, pub usize);

/// Extends M, acting on the chosen summands (in order), by the identity on
/// the remaining one.
pub fn block_embed<F: Field>(
    field: &F,
    m: &Matrix<F::Elem>,
    parts: SummandPair,
    dims: [usize; 3],
) -> Result<Matrix<F::Elem>, GroupError> {
    let SummandPair(a, b) = parts;
    if a >= 3 || b >= 3 || a == b {
        return Err(GroupError::InvalidSummands(a, b));
    }
    let offsets = [0, dims[0], dims[0] + dims[1]];
    let coords: Vec<usize> = [a, b]
        .iter()
        .flat_map(|&s| offsets[s]..offsets[s] + dims[s])
        .collect();
    if m.dim() != coords.len() {
        return Err(GroupError::DimensionMismatch { expected: coords.len(), found: m.dim() });
    }
    let n: usize = dims.iter().sum();
    let mut out = Matrix::identity(field, n);
    for (i, &ci) in coords.iter().enumerate() {
        for (j, &cj) in coords.iter().enumerate() {
            out.set(ci, cj, m.get(i, j));
        }
    }
    Ok(out)
}

/// A fixed similitude with multiplier m: diag(m, 1, m, 1, …) in the
/// interleaved symplectic basis, diag(m, 1, …, 1) without a form, λ·I with
/// N(λ) = m in the inert Hermitian case, and diag(I, m·I) in the split case.
pub fn similitude<F: Field>(space: &FormedSpace<F>, m: F::Elem) -> Result<Matrix<F::Elem>, GroupError> {
    let f = space.field();
    let n = space.dim();
    if f.is_zero(m) {
        return Err(GroupError::NoSimilitude);
    }
    let one = f.one();
    let diag: Vec<F::Elem> = match space.kind() {
        FormKind::Symplectic => (0..n).map(|i| if i % 2 == 0 { m } else { one }).collect(),
        FormKind::None => (0..n).map(|i| if i == 0 { m } else { one }).collect(),
        FormKind::SplitHermitian => (0..n).map(|i| if i < n / 2 { one } else { m }).collect(),
        FormKind::Hermitian => {
            if f.conj(m) != m {
                return Err(GroupError::NoSimilitude);
            }
            let lambda = f
                .elements()
                .into_iter()
                .find(|&x| f.mul(x, f.conj(x)) == m)
                .ok_or(GroupError::NoSimilitude)?;
            vec![lambda; n]
        }
    };
    Ok(Matrix::diagonal(f, &diag))
}
