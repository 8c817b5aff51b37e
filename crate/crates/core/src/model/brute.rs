//! Exhaustive-search reference oracle.

use crate::error::{Error, Result};
use crate::model::cost::{BinaryCost, CompiledCost};
use crate::model::qubo::Assignment;

/// Default variable cap for exhaustive enumeration (2²⁴ assignments).
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 24;

/// Global minimizer by enumeration of all 2ⁿ assignments, using the default
/// variable cap. Ties are broken toward the lexicographically smallest
/// bitstring.
pub fn brute_force_min(cost: &impl BinaryCost) -> Result<(Assignment, f64)> {
    brute_force_min_with_cap(cost, DEFAULT_BRUTE_FORCE_CAP)
}

/// [`brute_force_min`] with an explicit variable cap.
///
/// Enumeration walks a Gray-code sequence so each step is an incremental
/// single-flip delta; candidates within a small guard band of the running
/// minimum are re-evaluated exactly before comparison, so accumulated
/// rounding drift cannot change the winner.
pub fn brute_force_min_with_cap(cost: &impl BinaryCost, cap: usize) -> Result<(Assignment, f64)> {
    let n = cost.num_vars();
    if n > cap {
        return Err(Error::Resource(format!(
            "{n} variables exceed the exhaustive-search cap of {cap}"
        )));
    }
    if n == 0 {
        return Ok((Assignment::zeros(0), cost.energy_of_bits(&[])));
    }

    let compiled = CompiledCost::compile(cost);
    let mut bits = vec![0u8; n];
    let mut energy = compiled.energy(&bits);
    let mut best_bits = bits.clone();
    let mut best_energy = energy;

    const GUARD: f64 = 1e-6;
    let total: u64 = 1u64 << n;
    for step in 1..total {
        let flip = step.trailing_zeros() as usize;
        energy += compiled.flip_delta(&bits, flip);
        bits[flip] ^= 1;

        if energy < best_energy + GUARD {
            // Re-evaluate exactly so ties are decided on true energies.
            let exact = compiled.energy(&bits);
            energy = exact;
            if exact < best_energy || (exact == best_energy && bits < best_bits) {
                best_energy = exact;
                best_bits.copy_from_slice(&bits);
            }
        }
    }

    Ok((Assignment::new(best_bits).expect("bits are binary"), best_energy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::qubo::QuboModel;

    #[test]
    fn nonnegative_coefficients_minimize_at_zero() {
        let mut q = QuboModel::new(2);
        q.add_linear(0, 1.0).unwrap();
        q.add_linear(1, 2.0).unwrap();
        let (x, e) = brute_force_min(&q).unwrap();
        assert_eq!(x.as_slice(), &[0, 0]);
        assert_eq!(e, 0.0);
    }

    #[test]
    fn ties_break_to_lexicographically_smallest() {
        // h = [−1, −1], Q_{01} = 3: minima at [0,1] and [1,0], both −1.
        let mut q = QuboModel::new(2);
        q.add_linear(0, -1.0).unwrap();
        q.add_linear(1, -1.0).unwrap();
        q.add_quadratic(0, 1, 3.0).unwrap();
        let (x, e) = brute_force_min(&q).unwrap();
        assert_eq!(e, -1.0);
        assert_eq!(x.as_slice(), &[0, 1], "lexicographic tie-break");
    }

    #[test]
    fn over_cap_is_a_resource_error() {
        let q = QuboModel::new(30);
        assert!(matches!(brute_force_min(&q), Err(Error::Resource(_))));
        assert!(brute_force_min_with_cap(&QuboModel::new(10), 9).is_err());
    }

    #[test]
    fn matches_naive_enumeration_on_random_models() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..25 {
            let n = rng.gen_range(1..=10usize);
            let mut q = QuboModel::new(n);
            for i in 0..n {
                q.add_linear(i, rng.gen_range(-2.0..2.0)).unwrap();
                for j in i + 1..n {
                    if rng.gen_bool(0.5) {
                        q.add_quadratic(i, j, rng.gen_range(-2.0..2.0)).unwrap();
                    }
                }
            }
            let (x, e) = brute_force_min(&q).unwrap();
            // Naive oracle in lexicographic bitstring order.
            let mut want_bits: Option<Vec<u8>> = None;
            let mut want_e = f64::INFINITY;
            for k in 0..1u64 << n {
                let bits: Vec<u8> = (0..n).map(|i| ((k >> (n - 1 - i)) & 1) as u8).collect();
                let cand = q.energy_of_bits(&bits);
                if cand < want_e {
                    want_e = cand;
                    want_bits = Some(bits);
                }
            }
            assert_eq!(e, want_e);
            assert_eq!(x.as_slice(), want_bits.unwrap().as_slice());
        }
    }

    #[test]
    fn penalized_model_minimizes_on_feasible_points() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let n = rng.gen_range(2..=10usize);
            let mut q = QuboModel::new(n);
            for i in 0..n {
                q.add_linear(i, rng.gen_range(-2.0..2.0)).unwrap();
                for j in i + 1..n {
                    q.add_quadratic(i, j, rng.gen_range(-2.0..2.0)).unwrap();
                }
            }
            // Feasible by construction: b = aᵀx* for a random integer a, x*.
            let a: Vec<f64> = (0..n).map(|_| rng.gen_range(-2i64..=2) as f64).collect();
            let xstar: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2u8)).collect();
            let b: f64 = a.iter().zip(&xstar).map(|(ai, &x)| ai * x as f64).sum();
            let pen = q.with_equality_penalty(&a, b, q.default_penalty_weight()).unwrap();
            let (x, _) = brute_force_min(&pen).unwrap();
            let achieved: f64 =
                a.iter().zip(x.as_slice()).map(|(ai, &xi)| ai * xi as f64).sum();
            assert_eq!(achieved, b, "penalized minimizer must be feasible");
        }
    }
}
