use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::filtration::Filtration;
use crate::poly::Polynomial;
use crate::ring::RingIdeal;

/// Window of consecutive n on which J·I_n = I_{n+1} must hold before a
/// reduction is accepted; "for all large n" is not finitely decidable.
pub const REDUCTION_WINDOW: i64 = 3;
const MAX_ATTEMPTS: usize = 10;
const MAX_SUBSETS: usize = 20;

/// All k-element index subsets of 0..n in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - (k - i) {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// A range-verified reduction of a filtration.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub gens: Vec<Polynomial>,
    /// First n with J·I_n = I_{n+1} through the whole window.
    pub verified_at: i64,
    pub window: i64,
}

impl Reduction {
    pub fn as_ring_ideal(&self, f: &Arc<Filtration>) -> RingIdeal {
        RingIdeal::from_gens(f.ring().clone(), self.gens.clone())
    }
}

/// Least n0 <= n_max with J·I_n = I_{n+1} for every n in [n0, n0+window];
/// `None` when no window inside the range works.
pub fn is_reduction(f: &Arc<Filtration>, j: &RingIdeal, n_max: i64) -> Result<Option<i64>> {
    if !f.term(1)?.contains(j)? {
        return Err(Error::HypothesisUnverified("J is not contained in I_1".into()));
    }
    let mut streak_start: Option<i64> = None;
    for n in 1..=(n_max + REDUCTION_WINDOW) {
        let lhs = j.product(&f.term(n)?)?;
        let rhs = f.term(n + 1)?;
        if lhs.equals(&rhs)? {
            let start = *streak_start.get_or_insert(n);
            if n - start >= REDUCTION_WINDOW && start <= n_max {
                return Ok(Some(start));
            }
        } else {
            streak_start = None;
        }
    }
    Ok(None)
}

/// Search for a minimal reduction: first every d-element subset of the
/// minimal generators of I_1 (in deterministic order), then dim R random
/// k-linear combinations redrawn until the window check passes.
/// Deterministic given the seed.
///
/// Subsets come first because lengths here are colengths in the polynomial
/// ring: a random combination of generators of different degrees usually
/// vanishes somewhere away from the origin, and the global window check
/// rightly rejects it even though it is a reduction locally.
pub fn find_minimal_reduction(f: &Arc<Filtration>, seed: u64, n_max: i64) -> Result<Reduction> {
    let ring = f.ring();
    let d = ring.dim();
    let field = ring.field();
    let term1 = f.term(1)?;
    // Minimal generators of the lift, with the presentation relations
    // filtered out (they are zero in R).
    let gens: Vec<Polynomial> = term1
        .lift()
        .interreduced()?
        .gens()
        .iter()
        .filter(|g| !ring.quotient().contains_poly(g).unwrap_or(false))
        .cloned()
        .collect();
    if gens.is_empty() {
        return Err(Error::NoReductionFound(0));
    }
    for subset in subsets(gens.len(), d).into_iter().take(MAX_SUBSETS) {
        let combos: Vec<Polynomial> = subset.iter().map(|&i| gens[i].clone()).collect();
        let j = RingIdeal::from_gens(ring.clone(), combos.clone());
        if let Some(n0) = is_reduction(f, &j, n_max)? {
            return Ok(Reduction { gens: combos, verified_at: n0, window: REDUCTION_WINDOW });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=MAX_ATTEMPTS {
        let mut combos = Vec::with_capacity(d);
        for _ in 0..d {
            let mut combo = Polynomial::zero(field, ring.nvars());
            for g in &gens {
                let c = rng.gen_range(0..field.modulus());
                combo = combo.add(&g.scalar_mul(c))?;
            }
            combos.push(combo);
        }
        if combos.iter().any(|c| c.is_zero()) {
            continue;
        }
        let j = RingIdeal::from_gens(ring.clone(), combos.clone());
        if let Some(n0) = is_reduction(f, &j, n_max)? {
            return Ok(Reduction { gens: combos, verified_at: n0, window: REDUCTION_WINDOW });
        }
        let _ = attempt;
    }
    Err(Error::NoReductionFound(MAX_ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::hilbert::{fit_coefficients, hilbert_table};
    use crate::monomial::Monomial;
    use crate::ring::PresentedRing;

    fn field() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    fn mono(exps: &[u16]) -> Polynomial {
        Polynomial::monomial(field(), Monomial::new(exps.to_vec()), 1)
    }

    fn plane() -> Arc<PresentedRing> {
        PresentedRing::new(field(), vec!["x".into(), "y".into()], vec![]).unwrap()
    }

    #[test]
    fn explicit_reduction_of_m2() {
        let r = plane();
        let m2 = RingIdeal::from_gens(r.clone(), vec![mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])]);
        let f = Filtration::adic(m2).unwrap();
        let j = RingIdeal::from_gens(r, vec![mono(&[2, 0]), mono(&[0, 2])]);
        assert_eq!(is_reduction(&f, &j, 8).unwrap(), Some(1));
    }

    #[test]
    fn wrong_height_fails() {
        let r = plane();
        let m = RingIdeal::maximal(r.clone());
        let f = Filtration::adic(m).unwrap();
        let j = RingIdeal::from_gens(r, vec![mono(&[1, 0])]);
        assert_eq!(is_reduction(&f, &j, 8).unwrap(), None);
    }

    #[test]
    fn cusp_parameter_reduces_maximal_ideal() {
        // In k[a,b]/(b^2 - a^3), m^2 = a·m, so (a) reduces the m-adic
        // filtration from n0 = 1.
        let rel = mono(&[0, 2]).add(&mono(&[3, 0]).neg()).unwrap();
        let r = PresentedRing::new(field(), vec!["a".into(), "b".into()], vec![rel]).unwrap();
        let f = Filtration::adic(RingIdeal::maximal(r.clone())).unwrap();
        let j = RingIdeal::from_gens(r, vec![mono(&[1, 0])]);
        assert_eq!(is_reduction(&f, &j, 8).unwrap(), Some(1));
    }

    #[test]
    fn closure_filtration_accepts_its_seed_pair() {
        let r = plane();
        let seed = RingIdeal::from_gens(r.clone(), vec![mono(&[3, 0]), mono(&[0, 2])]);
        let f = Filtration::newton_closure(seed).unwrap();
        let j = RingIdeal::from_gens(r, vec![mono(&[3, 0]), mono(&[0, 2])]);
        assert!(is_reduction(&f, &j, 8).unwrap().is_some());
    }

    #[test]
    fn random_search_is_deterministic_and_verified() {
        let r = plane();
        let m2 = RingIdeal::from_gens(r, vec![mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])]);
        let f = Filtration::adic(m2).unwrap();
        let a = find_minimal_reduction(&f, 7, 8).unwrap();
        let b = find_minimal_reduction(&f, 7, 8).unwrap();
        assert_eq!(a.gens, b.gens);
        assert_eq!(a.gens.len(), 2);
        let j = a.as_ring_ideal(&f);
        assert!(is_reduction(&f, &j, 8).unwrap().is_some());
    }

    #[test]
    fn multiplicity_is_invariant_under_reduction() {
        // e_0 of the J-adic filtration equals e_0 of F for a verified
        // reduction J.
        let r = plane();
        let m2 = RingIdeal::from_gens(r, vec![mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])]);
        let f = Filtration::adic(m2).unwrap();
        let red = find_minimal_reduction(&f, 3, 8).unwrap();
        let j = red.as_ring_ideal(&f);
        let fj = Filtration::adic(j).unwrap();
        let e_f = fit_coefficients(&hilbert_table(&f, 8).unwrap()).unwrap();
        let e_j = fit_coefficients(&hilbert_table(&fj, 8).unwrap()).unwrap();
        assert_eq!(e_f.e[0], e_j.e[0]);
    }

    #[test]
    fn principal_seed_returns_itself_up_to_scale() {
        // (x^3)-adic in k[x] (presented as k[x,y]/(y)).
        let r = PresentedRing::new(field(), vec!["x".into(), "y".into()], vec![mono(&[0, 1])])
            .unwrap();
        let i = RingIdeal::from_gens(r.clone(), vec![mono(&[3, 0])]);
        let f = Filtration::adic(i.clone()).unwrap();
        let red = find_minimal_reduction(&f, 1, 8).unwrap();
        let j = red.as_ring_ideal(&f);
        assert!(j.equals(&i).unwrap());
    }
}
