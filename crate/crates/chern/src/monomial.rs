use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Exponent vector of fixed arity. Exponents are `u16` and every product is
/// overflow-checked; degrees in this engine stay far below 2^16.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    /// The single variable x_i.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exps })
    }

    pub fn pow(&self, n: u16) -> Result<Monomial> {
        let exps = self
            .exps
            .iter()
            .map(|&a| a.checked_mul(n).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(&b, &a)| b - a).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Total orders on monomials. All three refine divisibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic; the default working order.
    Grevlex,
    /// Pure lexicographic.
    Lex,
    /// Block order eliminating the first `block` variables: grevlex on the
    /// block, ties broken by grevlex on the rest.
    Elimination(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex_cmp(a.exps(), b.exps()),
            MonomialOrder::Lex => a.exps().cmp(b.exps()),
            MonomialOrder::Elimination(block) => {
                grevlex_cmp(&a.exps()[..block], &b.exps()[..block])
                    .then_with(|| grevlex_cmp(&a.exps()[block..], &b.exps()[block..]))
            }
        }
    }
}

fn grevlex_cmp(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    if da != db {
        return da.cmp(&db);
    }
    // Equal degree: last nonzero difference negative means a > b.
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}
