use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{is_m_primary, is_regular_element, PresentedRing, RingIdeal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiltrationKind {
    /// The I-adic filtration {I^n}.
    Adic,
    /// The integral-closure filtration of a monomial ideal in k[x,y],
    /// realized by lattice points of the scaled Newton polygon.
    NewtonClosure,
}

/// An admissible filtration n ↦ I_n with I_n = R for n <= 0, evaluated
/// lazily and memoized.
#[derive(Debug)]
pub struct Filtration {
    ring: Arc<PresentedRing>,
    kind: FiltrationKind,
    seed: RingIdeal,
    memo: Mutex<BTreeMap<i64, RingIdeal>>,
}

impl Filtration {
    pub fn adic(seed: RingIdeal) -> Result<Arc<Filtration>> {
        if !is_m_primary(&seed)? {
            return Err(Error::NotMPrimary);
        }
        Ok(Arc::new(Filtration {
            ring: seed.ring().clone(),
            kind: FiltrationKind::Adic,
            seed,
            memo: Mutex::new(BTreeMap::new()),
        }))
    }

    /// The filtration n ↦ closure of J^n for a monomial seed J in k[x,y].
    pub fn newton_closure(seed: RingIdeal) -> Result<Arc<Filtration>> {
        let ring = seed.ring().clone();
        if !ring.quotient().is_zero_ideal() {
            return Err(Error::ClosureUnsupported("quotient ring".into()));
        }
        if ring.nvars() != 2 {
            return Err(Error::ClosureUnsupported(format!("{} variables", ring.nvars())));
        }
        if !seed.is_monomial() {
            return Err(Error::ClosureUnsupported("non-monomial generators".into()));
        }
        if !is_m_primary(&seed)? {
            return Err(Error::NotMPrimary);
        }
        Ok(Arc::new(Filtration {
            ring,
            kind: FiltrationKind::NewtonClosure,
            seed,
            memo: Mutex::new(BTreeMap::new()),
        }))
    }

    pub fn ring(&self) -> &Arc<PresentedRing> {
        &self.ring
    }

    pub fn kind(&self) -> FiltrationKind {
        self.kind
    }

    /// The ideal the filtration was built from (I for adic, J for closure).
    pub fn seed(&self) -> &RingIdeal {
        &self.seed
    }

    /// I_n, with I_n = R for n <= 0.
    pub fn term(&self, n: i64) -> Result<RingIdeal> {
        if n <= 0 {
            return Ok(RingIdeal::unit(self.ring.clone()));
        }
        if let Some(hit) = self.memo.lock().unwrap().get(&n) {
            return Ok(hit.clone());
        }
        let val = match self.kind {
            FiltrationKind::Adic => {
                // Build up from the largest memoized power.
                let (mut k, mut acc) = {
                    let memo = self.memo.lock().unwrap();
                    match memo.range(..n).next_back() {
                        Some((&k, v)) if k >= 1 => (k, v.clone()),
                        _ => (1, self.seed.clone()),
                    }
                };
                while k < n {
                    acc = acc.product(&self.seed)?;
                    k += 1;
                }
                acc
            }
            FiltrationKind::NewtonClosure => {
                let n32 = u32::try_from(n).map_err(|_| Error::ExponentOverflow)?;
                let closed = newton_closure(self.seed.lift(), n32)?;
                RingIdeal::from_lift(self.ring.clone(), closed)
            }
        };
        self.memo.lock().unwrap().insert(n, val.clone());
        Ok(val)
    }

    /// Least k with I^n ⊆ I_n ⊆ I^{n-k} for 1 <= n <= N; range-verified
    /// evidence, not a proof.
    pub fn admissibility_check(&self, n_max: i64) -> Result<u32> {
        assert!(n_max >= 2);
        let mut k_needed = 0u32;
        for n in 1..=n_max {
            let term = self.term(n)?;
            let adic = self.seed.power(n as u32)?;
            if !term.contains(&adic)? {
                return Err(Error::NotAdmissibleUpTo(n));
            }
            let mut k = k_needed;
            loop {
                let shifted = if n - (k as i64) <= 0 {
                    RingIdeal::unit(self.ring.clone())
                } else {
                    self.seed.power((n - k as i64) as u32)?
                };
                if shifted.contains(&term)? {
                    break;
                }
                k += 1;
                if k as i64 > n {
                    return Err(Error::NotAdmissibleUpTo(n));
                }
            }
            k_needed = k_needed.max(k);
        }
        Ok(k_needed)
    }

    /// Finite-range evidence that x* is a nonzerodivisor on the associated
    /// graded ring: x regular in R and (I_n : x) = I_{n-1} for 2 <= n <= N.
    pub fn graded_regularity_check(&self, x: &Polynomial, n_max: i64) -> Result<RegularityEvidence> {
        if !self.term(1)?.contains_poly(x)? {
            return Err(Error::HypothesisUnverified("x is not in the first filtration term".into()));
        }
        if !is_regular_element(&self.ring, x)? {
            return Err(Error::RegularityFails {
                n: 0,
                witness: "x is a zerodivisor in R".into(),
            });
        }
        for n in 2..=n_max {
            let colon = self.term(n)?.colon_element(x)?;
            let prev = self.term(n - 1)?;
            if !colon.equals(&prev)? {
                // Name a generator of the colon that escapes I_{n-1}.
                let witness = colon
                    .lift()
                    .gens()
                    .iter()
                    .find(|g| !prev.contains_poly(g).unwrap_or(false))
                    .map(|g| g.render(self.ring.vars()))
                    .unwrap_or_else(|| "containment failure".into());
                return Err(Error::RegularityFails { n, witness });
            }
        }
        Ok(RegularityEvidence { checked_to: n_max })
    }
}

/// Evidence record for a passed finite-range regularity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegularityEvidence {
    pub checked_to: i64,
}

/// Minimal generators of the integral closure of I^n for a monomial
/// m-primary ideal I in k[x,y]: the componentwise-minimal lattice points of
/// the n-scaled Newton polygon.
pub fn newton_closure(ideal: &Ideal, n: u32) -> Result<Ideal> {
    if !ideal.is_monomial_ideal() {
        return Err(Error::ClosureUnsupported("non-monomial generators".into()));
    }
    if ideal.nvars() != 2 {
        return Err(Error::ClosureUnsupported(format!("{} variables", ideal.nvars())));
    }
    let field = ideal.field();
    if n == 0 {
        return Ok(Ideal::unit(field, 2));
    }
    let points: Vec<(i64, i64)> = ideal
        .gens()
        .iter()
        .map(|g| {
            let e = g.terms()[0].0.exps();
            (e[0] as i64, e[1] as i64)
        })
        .collect();
    let a_max = points.iter().filter(|p| p.1 == 0).map(|p| p.0).min();
    let b_max = points.iter().filter(|p| p.0 == 0).map(|p| p.1).min();
    let (a_max, b_max) = match (a_max, b_max) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::NotMPrimary),
    };
    let edges = newton_edges(&points);

    // The box [0, n*a_max] x [0, n*b_max] provably contains every minimal
    // generator: the scaled pure powers are corners of the polygon.
    let bound_a = n as i64 * a_max;
    let bound_b = n as i64 * b_max;
    let inside = |a: i64, b: i64| -> bool {
        edges.iter().all(|&(na, nb, c)| na * a + nb * b >= n as i64 * c)
    };
    let mut members: Vec<(i64, i64)> = Vec::new();
    for a in 0..=bound_a {
        for b in 0..=bound_b {
            if inside(a, b) {
                members.push((a, b));
                break; // larger b are dominated
            }
        }
    }
    // Componentwise-minimal filter.
    let minimal: Vec<(i64, i64)> = members
        .iter()
        .filter(|&&(a, b)| !members.iter().any(|&(c, d)| (c, d) != (a, b) && c <= a && d <= b))
        .cloned()
        .collect();
    let gens = minimal
        .into_iter()
        .map(|(a, b)| {
            Polynomial::monomial(field, Monomial::new(vec![a as u16, b as u16]), 1)
        })
        .collect();
    Ok(Ideal::new(field, 2, gens))
}

/// Half-plane descriptions (alpha, beta, c) with alpha*a + beta*b >= c of the
/// lower-left boundary of the Newton polygon of the given exponent set.
fn newton_edges(points: &[(i64, i64)]) -> Vec<(i64, i64, i64)> {
    // Componentwise-minimal points, sorted by x ascending / y descending.
    let mut pts: Vec<(i64, i64)> = points
        .iter()
        .filter(|&&(a, b)| !points.iter().any(|&(c, d)| (c, d) != (a, b) && c <= a && d <= b))
        .cloned()
        .collect();
    pts.sort();
    pts.dedup();
    // Lower-left convex chain: drop middle points on or above the segment of
    // their neighbors.
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull.windows(2)
        .map(|w| {
            let (x1, y1) = w[0];
            let (x2, y2) = w[1];
            let alpha = y1 - y2;
            let beta = x2 - x1;
            (alpha, beta, alpha * x1 + beta * y1)
        })
        .collect()
}
