//! Generation of G(V₁ ⊕ V₂ ⊕ V₃) by G(V₁ ⊕ V₂) and G(V₂ ⊕ V₃).

use serde::{Deserialize, Serialize};

use super::bsgs::bsgs_order;
use super::forms::{
    block_embed, split_embed, split_hermitian_space, standard_hermitian_space,
    standard_symplectic_space, SummandPair,
};
use super::generators::{sl_generators, sp_generators, split_su_generators, su_generators};
use super::matrix::Matrix;
use super::order::{sl_order, sp_order, su_order};
use super::GroupError;
use crate::residue::{classify_prime, Field, PrimeField, Splitting};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Sl,
    Sp,
    Su,
}

impl std::str::FromStr for GroupKind {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sl" => Ok(GroupKind::Sl),
            "sp" => Ok(GroupKind::Sp),
            "su" => Ok(GroupKind::Su),
            _ => Err(GroupError::UnknownKind(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationReport {
    pub kind: GroupKind,
    pub unit_dims: [usize; 3],
    pub ell: u32,
    /// `split` or `inert` for unitary groups.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splitting: Option<Splitting>,
    pub order_generated: u128,
    pub order_target: u128,
    pub equal: bool,
}

/// Embeds generators of the group on V_a ⊕ V_b (given by `make`) into the
/// full space, for both (V₁, V₂) and (V₂, V₃).
fn embedded_pair<F: Field, G>(
    field: &F,
    dims: [usize; 3],
    mut make: G,
) -> Result<Vec<Matrix<F::Elem>>, GroupError>
where
    G: FnMut(usize) -> Result<Vec<Matrix<F::Elem>>, GroupError>,
{
    let mut out = Vec::new();
    for (pair, size) in [(SummandPair(0, 1), dims[0] + dims[1]), (SummandPair(1, 2), dims[1] + dims[2])] {
        for m in make(size)? {
            out.push(block_embed(field, &m, pair, dims)?);
        }
    }
    Ok(out)
}

/// Compares |⟨G(V₁⊕V₂), G(V₂⊕V₃)⟩| with |G(V)|.
///
/// `unit_dims` are ranks over the coefficient ring: each V_i has dimension
/// g_i for SL and SU, and 2g_i for Sp.
pub fn verify_generation(kind: GroupKind, unit_dims: [usize; 3], ell: u32) -> Result<GenerationReport, GroupError> {
    if unit_dims.contains(&0) {
        return Err(GroupError::InvalidDimension(0));
    }
    let modulus = classify_prime(ell)?;
    if ell == 2 {
        return Err(GroupError::EvenCharacteristic);
    }
    let total: usize = unit_dims.iter().sum();
    let mut splitting = None;
    let (order_generated, order_target) = match kind {
        GroupKind::Sl => {
            let f = PrimeField::new(ell)?;
            let gens = embedded_pair(&f, unit_dims, |n| Ok(sl_generators(&f, n)))?;
            (bsgs_order(&f, total, &gens)?, sl_order(total as u32, ell as u64))
        }
        GroupKind::Sp => {
            let f = PrimeField::new(ell)?;
            let dims = unit_dims.map(|g| 2 * g);
            let gens = embedded_pair(&f, dims, |n| sp_generators(&standard_symplectic_space(n / 2, ell)?))?;
            (bsgs_order(&f, 2 * total, &gens)?, sp_order(total as u32, ell as u64))
        }
        GroupKind::Su => {
            splitting = Some(modulus.splitting());
            match modulus.splitting() {
                Splitting::Ramified => return Err(GroupError::RamifiedUnitary),
                Splitting::Inert => {
                    let space = standard_hermitian_space(total, ell)?;
                    let f = *space.field();
                    let gens = embedded_pair(&f, unit_dims, |n| su_generators(&standard_hermitian_space(n, ell)?))?;
                    (bsgs_order(&f, total, &gens)?, su_order(total as u32, ell as u64))
                }
                Splitting::Split => {
                    // SU over Z/ℓ × Z/ℓ is SL_g(Z/ℓ) acting as τ × ᵗτ⁻¹.
                    let space = split_hermitian_space(total, ell)?;
                    let f = *space.field();
                    let taus = embedded_pair(&f, unit_dims, |n| Ok(sl_generators(&f, n)))?;
                    let gens = taus
                        .iter()
                        .map(|t| split_embed(&f, t))
                        .collect::<Result<Vec<_>, _>>()?;
                    for g in &gens {
                        debug_assert_eq!(space.contains(g), Ok(true));
                    }
                    (bsgs_order(&f, 2 * total, &gens)?, sl_order(total as u32, ell as u64))
                }
            }
        }
    };
    Ok(GenerationReport {
        kind,
        unit_dims,
        ell,
        splitting,
        order_generated,
        order_target,
        equal: order_generated == order_target,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderReport {
    pub kind: GroupKind,
    /// n for SL_n and SU_n, g for Sp_{2g}.
    pub rank: usize,
    pub ell: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splitting: Option<Splitting>,
    pub order_bsgs: u128,
    pub order_formula: u128,
    pub equal: bool,
}

/// BSGS order of the standard generators against the classical formula.
/// Split unitary groups are computed as SL_n acting by τ × ᵗτ⁻¹.
pub fn order_report(kind: GroupKind, rank: usize, ell: u32) -> Result<OrderReport, GroupError> {
    if rank == 0 {
        return Err(GroupError::InvalidDimension(0));
    }
    let modulus = classify_prime(ell)?;
    if ell == 2 {
        return Err(GroupError::EvenCharacteristic);
    }
    let mut splitting = None;
    let (order_bsgs, order_formula) = match kind {
        GroupKind::Sl => {
            let f = PrimeField::new(ell)?;
            (bsgs_order(&f, rank, &sl_generators(&f, rank))?, sl_order(rank as u32, ell as u64))
        }
        GroupKind::Sp => {
            let space = standard_symplectic_space(rank, ell)?;
            let gens = sp_generators(&space)?;
            (bsgs_order(space.field(), 2 * rank, &gens)?, sp_order(rank as u32, ell as u64))
        }
        GroupKind::Su => {
            splitting = Some(modulus.splitting());
            match modulus.splitting() {
                Splitting::Ramified => return Err(GroupError::RamifiedUnitary),
                Splitting::Inert => {
                    let space = standard_hermitian_space(rank, ell)?;
                    let gens = su_generators(&space)?;
                    (bsgs_order(space.field(), rank, &gens)?, su_order(rank as u32, ell as u64))
                }
                Splitting::Split => {
                    let space = split_hermitian_space(rank, ell)?;
                    let gens = split_su_generators(&space)?;
                    (bsgs_order(space.field(), 2 * rank, &gens)?, sl_order(rank as u32, ell as u64))
                }
            }
        }
    };
    Ok(OrderReport { kind, rank, ell, splitting, order_bsgs, order_formula, equal: order_bsgs == order_formula })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl_111_mod_5() {
        let r = verify_generation(GroupKind::Sl, [1, 1, 1], 5).unwrap();
        assert_eq!((r.order_generated, r.order_target, r.equal), (372000, 372000, true));
    }

    #[test]
    fn sp_111_mod_3() {
        let r = verify_generation(GroupKind::Sp, [1, 1, 1], 3).unwrap();
        assert!(r.equal);
        assert_eq!(r.order_target, 9_170_703_360);
    }

    #[test]
    fn su_refuses_ramified_prime() {
        assert!(matches!(verify_generation(GroupKind::Su, [1, 1, 1], 3), Err(GroupError::RamifiedUnitary)));
    }

    #[test]
    fn rejects_two() {
        assert!(matches!(verify_generation(GroupKind::Sl, [1, 1, 1], 2), Err(GroupError::EvenCharacteristic)));
    }

    #[test]
    fn a_single_block_generates_less() {
        // Only V₁ ⊕ V₂ moving: the embedded generators of a (1,1,1) SL split
        // cannot produce all of SL₃ on their own.
        let f = PrimeField::new(5).unwrap();
        let gens: Vec<_> = sl_generators(&f, 2)
            .iter()
            .map(|m| block_embed(&f, m, SummandPair(0, 1), [1, 1, 1]).unwrap())
            .collect();
        assert_eq!(bsgs_order(&f, 3, &gens).unwrap(), 120);
    }

    #[test]
    fn order_reports() {
        let r = order_report(GroupKind::Su, 2, 5).unwrap();
        assert_eq!((r.order_bsgs, r.equal), (120, true));
        assert!(order_report(GroupKind::Su, 2, 7).unwrap().equal);
        assert!(order_report(GroupKind::Sp, 2, 3).unwrap().equal);
    }
}
