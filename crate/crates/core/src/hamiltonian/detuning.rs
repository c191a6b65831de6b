/// Which way to convert along a detuning chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainDirection {
    /// Per-transition detunings δ to cumulative detunings Δ.
    SmallToBig,
    /// Cumulative Δ back to per-transition δ.
    BigToSmall,
}

/// `Δ_j = Σ_{i≤j} (−1)^{i+1} δ_i` and its inverse
/// `δ_j = (−1)^{j+1} (Δ_j − Δ_{j−1})`.
pub fn detuning_chain(direction: ChainDirection, values: &[f64]) -> Vec<f64> {
    let sign = |j: usize| if j.is_multiple_of(2) { 1.0 } else { -1.0 };
    match direction {
        ChainDirection::SmallToBig => {
            let mut acc = 0.0;
            values
                .iter()
                .enumerate()
                .map(|(j, &d)| {
                    acc += sign(j) * d;
                    acc
                })
                .collect()
        }
        ChainDirection::BigToSmall => {
            let mut previous = 0.0;
            values
                .iter()
                .enumerate()
                .map(|(j, &big)| {
                    let d = sign(j) * (big - previous);
                    previous = big;
                    d
                })
                .collect()
        }
    }
}

/// Paired per-transition and cumulative detunings.
#[derive(Clone, Debug, PartialEq)]
pub struct DetuningChain {
    pub small: Vec<f64>,
    pub big: Vec<f64>,
}

impl DetuningChain {
    pub fn from_small(small: &[f64]) -> Self {
        Self {
            small: small.to_vec(),
            big: detuning_chain(ChainDirection::SmallToBig, small),
        }
    }

    pub fn from_big(big: &[f64]) -> Self {
        Self {
            small: detuning_chain(ChainDirection::BigToSmall, big),
            big: big.to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn only_first_small_detuning() {
        assert_eq!(
            detuning_chain(ChainDirection::SmallToBig, &[1.0, 0.0, 0.0, 0.0]),
            vec![1.0, 1.0, 1.0, 1.0]
        );
    }

    #[test]
    fn alternating_sum() {
        assert_eq!(
            detuning_chain(ChainDirection::SmallToBig, &[1.0, 2.0, 3.0, 4.0]),
            vec![1.0, -1.0, 2.0, -2.0]
        );
        assert_eq!(
            detuning_chain(ChainDirection::BigToSmall, &[1.0, -1.0, 2.0, -2.0]),
            vec![1.0, 2.0, 3.0, 4.0]
        );
    }

    #[test]
    fn empty_chain() {
        assert!(detuning_chain(ChainDirection::SmallToBig, &[]).is_empty());
    }

    proptest! {
        #[test]
        fn integer_round_trip_is_exact(v in proptest::collection::vec(-1_000_000i32..1_000_000, 0..8)) {
            let big: Vec<f64> = v.iter().map(|&x| f64::from(x)).collect();
            let small = detuning_chain(ChainDirection::BigToSmall, &big);
            let back = detuning_chain(ChainDirection::SmallToBig, &small);
            prop_assert_eq!(back, big);
        }

        #[test]
        fn float_round_trip_drifts_by_ulps_of_the_scale(v in proptest::collection::vec(-100.0f64..100.0, 1..8)) {
            let small = detuning_chain(ChainDirection::BigToSmall, &v);
            let back = detuning_chain(ChainDirection::SmallToBig, &small);
            let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            for (a, b) in back.iter().zip(&v) {
                prop_assert!((a - b).abs() <= 2.0 * v.len() as f64 * f64::EPSILON * scale);
            }
        }
    }
}
