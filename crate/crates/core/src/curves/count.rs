//! Point counts over F_{p^k} on the smooth projective model.
//!
//! Infinity convention: f is monic of degree divisible by d, so the cover
//! is unramified over ∞ and the points there are the d-th roots of the
//! leading coefficient 1 in F_{p^k}.

use super::model::Curve;
use super::CurveError;
use crate::residue::{build_ext_field, ExtElem, ExtField};

fn field_for(curve: &Curve, k: u32) -> Result<ExtField, CurveError> {
    if k == 0 {
        return Err(CurveError::ExtensionOutOfRange(k));
    }
    build_ext_field(curve.p(), k).map_err(|_| CurveError::ExtensionOutOfRange(k))
}

/// f(x) for every x ∈ F_{p^k}, indexed by the element encoding.
fn rhs_values(curve: &Curve, field: &ExtField) -> Vec<ExtElem> {
    let coeffs: Vec<ExtElem> = curve.rhs().coeffs().iter().map(|&c| field.from_int(c as i64)).collect();
    field
        .elements()
        .map(|x| coeffs.iter().rev().fold(field.zero(), |acc, &c| field.add(field.mul(acc, x), c)))
        .collect()
}

fn points_at_infinity(curve: &Curve, field: &ExtField) -> u64 {
    let one = field.one();
    match curve.cover_degree() {
        2 => field.square_root_count(one) as u64,
        _ => field.cube_root_count(one) as u64,
    }
}

/// N_k = #C(F_{p^k}), summing the number of y over each x.
pub fn count_points(curve: &Curve, k: u32) -> Result<u64, CurveError> {
    let field = field_for(curve, k)?;
    let fibre = |v: ExtElem| match curve.cover_degree() {
        2 => field.square_root_count(v),
        _ => field.cube_root_count(v),
    };
    let affine: u64 = rhs_values(curve, &field).into_iter().map(|v| fibre(v) as u64).sum();
    Ok(affine + points_at_infinity(curve, &field))
}

/// Counts N_1..N_n.
pub fn count_points_up_to(curve: &Curve, n: u32) -> Result<Vec<u64>, CurveError> {
    (1..=n).map(|k| count_points(curve, k)).collect()
}

/// Reference count: tests every pair (x, y) ∈ F_{p^k}² against
/// y^d = ∏(x − c)^m, and every y against y^d = 1 for the points at ∞.
///
/// Over a branch point x = c the singular affine model has the single
/// point (c, 0), matching the one point of the normalization there.
pub fn brute_force_count(curve: &Curve, k: u32) -> Result<u64, CurveError> {
    let field = field_for(curve, k)?;
    let d = curve.cover_degree() as u64;
    let factors: Vec<(ExtElem, u64)> =
        curve.factors().iter().map(|&(r, m)| (field.from_int(r as i64), m as u64)).collect();
    let elements: Vec<ExtElem> = field.elements().collect();
    let powers: Vec<ExtElem> = elements.iter().map(|&y| field.pow(y, d)).collect();
    let mut total = 0u64;
    for &x in &elements {
        let fx = factors
            .iter()
            .fold(field.one(), |acc, &(r, m)| field.mul(acc, field.pow(field.sub(x, r), m)));
        total += powers.iter().filter(|&&yd| yd == fx).count() as u64;
    }
    total += powers.iter().filter(|&&yd| yd == field.one()).count() as u64;
    Ok(total)
}

/// Σ χ(f(x)) over F_{p^k} for the cubic character χ with
/// χ(c) = ω^i when c^{(q−1)/3} = ζⁱ, returned as (a, b) meaning a + bω.
pub fn cubic_character_sum(curve: &Curve, k: u32) -> Result<(i64, i64), CurveError> {
    if curve.cover_degree() != 3 {
        return Err(CurveError::NotTrielliptic);
    }
    let field = field_for(curve, k)?;
    let mut by_exponent = [0i64; 3];
    for v in rhs_values(curve, &field) {
        if let Some(i) = field.cubic_residue_exponent(v) {
            by_exponent[i as usize] += 1;
        }
    }
    // n₀ + n₁ω + n₂ω² with ω² = −1 − ω.
    let [n0, n1, n2] = by_exponent;
    Ok((n0 - n2, n1 - n2))
}
