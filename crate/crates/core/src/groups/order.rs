//! Orders of the finite classical groups.

/// |SL_n(q)| = q^{n(n−1)/2} ∏_{i=2..n} (q^i − 1).
pub fn sl_order(n: u32, q: u64) -> u128 {
    let q = q as u128;
    let mut acc = q.pow(n * n.saturating_sub(1) / 2);
    for i in 2..=n {
        acc *= q.pow(i) - 1;
    }
    acc
}

/// |Sp_{2g}(q)| = q^{g²} ∏_{i=1..g} (q^{2i} − 1).
pub fn sp_order(g: u32, q: u64) -> u128 {
    let q = q as u128;
    let mut acc = q.pow(g * g);
    for i in 1..=g {
        acc *= q.pow(2 * i) - 1;
    }
    acc
}

/// |SU_n(q)| = q^{n(n−1)/2} ∏_{i=2..n} (q^i − (−1)^i), for the unitary group
/// over F_{q²}.
pub fn su_order(n: u32, q: u64) -> u128 {
    let q = q as u128;
    let mut acc = q.pow(n * n.saturating_sub(1) / 2);
    for i in 2..=n {
        acc *= if i % 2 == 0 { q.pow(i) - 1 } else { q.pow(i) + 1 };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(sl_order(2, 5), 120);
        assert_eq!(sl_order(3, 5), 372000);
        assert_eq!(sl_order(3, 7), 5_630_688);
        assert_eq!(sl_order(1, 7), 1);
        assert_eq!(sp_order(1, 3), 24);
        assert_eq!(sp_order(2, 3), 51840);
        assert_eq!(sp_order(3, 3), 9_170_703_360);
        assert_eq!(su_order(2, 5), 120);
        assert_eq!(su_order(3, 5), 378000);
        assert_eq!(su_order(1, 5), 1);
    }
}
