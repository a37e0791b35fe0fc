//! Maps between unconstrained reals and polynomials `1 - a_1 z - ... - a_k z^k`
//! with all roots outside the unit circle, through partial autocorrelations.

/// `u -> tanh(u) -> Durbin-Levinson` build-up of the coefficients.
pub(crate) fn from_unconstrained(u: &[f64]) -> Vec<f64> {
    let partials: Vec<f64> = u.iter().map(|v| v.tanh()).collect();
    from_partials(&partials)
}

pub(crate) fn from_partials(partials: &[f64]) -> Vec<f64> {
    let mut a: Vec<f64> = Vec::with_capacity(partials.len());
    for (k, &r) in partials.iter().enumerate() {
        let prev = a.clone();
        for j in 0..k {
            a[j] = prev[j] - r * prev[k - 1 - j];
        }
        a.push(r);
    }
    a
}

/// Step-down recursion; `None` unless every partial lies strictly in (-1, 1).
pub(crate) fn to_partials(coefs: &[f64]) -> Option<Vec<f64>> {
    let mut a = coefs.to_vec();
    let mut partials = vec![0.0; a.len()];
    for k in (0..a.len()).rev() {
        let r = a[k];
        if r.is_nan() || r.abs() >= 1.0 {
            return None;
        }
        partials[k] = r;
        let denom = 1.0 - r * r;
        let prev = a.clone();
        for j in 0..k {
            a[j] = (prev[j] + r * prev[k - 1 - j]) / denom;
        }
        a.truncate(k);
    }
    Some(partials)
}

/// True iff every root of `1 - a_1 z - ... - a_k z^k` lies outside the unit circle.
pub fn is_stable(coefs: &[f64]) -> bool {
    to_partials(coefs).is_some()
}

#[cfg(test)]
pub(crate) fn to_unconstrained(coefs: &[f64]) -> Option<Vec<f64>> {
    to_partials(coefs).map(|p| p.iter().map(|r| r.atanh()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ar2_stability_region() {
        assert!(is_stable(&[0.5, 0.3]));
        assert!(!is_stable(&[0.5, 0.6])); // phi1 + phi2 > 1
        assert!(!is_stable(&[0.0, -1.0]));
        assert!(is_stable(&[1.2, -0.5]));
        assert!(is_stable(&[]));
        assert!(!is_stable(&[1.0]));
    }

    proptest! {
        #[test]
        fn round_trip(u in prop::collection::vec(-3.0f64..3.0, 0..6)) {
            let coefs = from_unconstrained(&u);
            let back = to_unconstrained(&coefs).unwrap();
            for (a, b) in u.iter().zip(&back) {
                prop_assert!((a - b).abs() < 1e-6);
            }
        }
    }
}
