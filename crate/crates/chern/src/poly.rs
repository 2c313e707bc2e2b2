use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};

/// Exact multivariate polynomial over a prime field.
///
/// Terms are kept strictly descending under grevlex as the canonical storage
/// form; order-sensitive operations (leading terms under lex or an
/// elimination order) scan for the maximum instead of re-sorting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: PrimeField,
    nvars: usize,
    terms: Vec<(Monomial, u64)>,
}

impl Polynomial {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        Polynomial { field, nvars, terms: Vec::new() }
    }

    pub fn one(field: PrimeField, nvars: usize) -> Self {
        Self::constant(field, nvars, 1)
    }

    pub fn constant(field: PrimeField, nvars: usize, c: i64) -> Self {
        let c = field.elem(c);
        let terms = if c == 0 { Vec::new() } else { vec![(Monomial::one(nvars), c)] };
        Polynomial { field, nvars, terms }
    }

    pub fn monomial(field: PrimeField, m: Monomial, c: i64) -> Self {
        let nvars = m.nvars();
        let c = field.elem(c);
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial { field, nvars, terms }
    }

    /// Normalize an arbitrary term list: merge duplicates, drop zeros, sort.
    pub fn from_terms(field: PrimeField, nvars: usize, mut raw: Vec<(Monomial, u64)>) -> Self {
        raw.sort_by(|a, b| MonomialOrder::Grevlex.cmp(&b.0, &a.0));
        let mut terms: Vec<(Monomial, u64)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match terms.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(last.1, c),
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|&(_, c)| c != 0);
        Polynomial { field, nvars, terms }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Result<(&Monomial, u64)> {
        if self.terms.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        if order == MonomialOrder::Grevlex {
            let (m, c) = &self.terms[0];
            return Ok((m, *c));
        }
        let (m, c) = self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0)).unwrap();
        Ok((m, *c))
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out: Vec<(Monomial, u64)> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match MonomialOrder::Grevlex.cmp(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.field.add(self.terms[i].1, other.terms[j].1);
                    if c != 0 {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(Polynomial { field: self.field, nvars: self.nvars, terms: out })
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(*c))).collect();
        Polynomial { field: self.field, nvars: self.nvars, terms }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, c: u64) -> Polynomial {
        if c == 0 {
            return Polynomial::zero(self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), self.field.mul(*a, c))).collect();
        Polynomial { field: self.field, nvars: self.nvars, terms }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                raw.push((ma.mul(mb)?, self.field.mul(*ca, *cb)));
            }
        }
        Ok(Polynomial::from_terms(self.field, self.nvars, raw))
    }

    /// Multiply by a single term.
    pub fn term_mul(&self, m: &Monomial, c: u64) -> Result<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (ma, ca) in &self.terms {
            terms.push((ma.mul(m)?, self.field.mul(*ca, c)));
        }
        // Multiplying every monomial by a fixed one preserves the grevlex sort.
        Ok(Polynomial { field: self.field, nvars: self.nvars, terms })
    }

    /// Scale so the grevlex leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some(&(_, c)) => self.scalar_mul(self.field.inv(c)),
        }
    }

    /// Exact division by `g`; errors if the remainder is nonzero.
    pub fn exact_div(&self, g: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(g)?;
        if g.is_zero() {
            return Err(Error::ZeroDivisorGenerator);
        }
        let (lm, lc) = g.leading_term(MonomialOrder::Grevlex)?;
        let lm = lm.clone();
        let lc_inv = self.field.inv(lc);
        let mut rem = self.clone();
        let mut quot_terms: Vec<(Monomial, u64)> = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if !lm.divides(&m) {
                return Err(Error::InexactDivision);
            }
            let qm = lm.quotient_into(&m);
            let qc = self.field.mul(c, lc_inv);
            quot_terms.push((qm.clone(), qc));
            rem = rem.sub(&g.term_mul(&qm, qc)?)?;
        }
        Ok(Polynomial::from_terms(self.field, self.nvars, quot_terms))
    }

    /// Re-embed into a ring with extra variables appended on the left
    /// (indices shift up by `extra`).
    pub fn extend_vars_front(&self, extra: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0u16; extra];
                exps.extend_from_slice(m.exps());
                (Monomial::new(exps), *c)
            })
            .collect();
        Polynomial::from_terms(self.field, self.nvars + extra, terms)
    }

    /// Drop the first `extra` variables; every term must have exponent 0 there.
    pub fn contract_vars_front(&self, extra: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                debug_assert!(m.exps()[..extra].iter().all(|&e| e == 0));
                (Monomial::new(m.exps()[extra..].to_vec()), *c)
            })
            .collect();
        Polynomial::from_terms(self.field, self.nvars - extra, terms)
    }

    /// Apply a variable permutation: new exponent at `perm[i]` is old at `i`.
    pub fn permute_vars(&self, perm: &[usize]) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0u16; self.nvars];
                for (i, &e) in m.exps().iter().enumerate() {
                    exps[perm[i]] = e;
                }
                (Monomial::new(exps), *c)
            })
            .collect();
        Polynomial::from_terms(self.field, self.nvars, terms)
    }

    pub fn render(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let p = self.field.modulus();
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            // Print small negatives as such for readability.
            let (neg, mag) = if *c > p / 2 { (true, p - *c) } else { (false, *c) };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != 1 || m.is_one() {
                factors.push(mag.to_string());
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    _ => factors.push(format!("{}^{}", vars[i], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.render(&vars))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    fn var(i: usize) -> Polynomial {
        Polynomial::monomial(field(), Monomial::var(2, i), 1)
    }

    #[test]
    fn add_cancels() {
        let x = var(0);
        let y = var(1);
        let s = x.add(&y).unwrap();
        let d = x.sub(&y).unwrap();
        // (x + y) + (x - y) = 2x
        assert_eq!(s.add(&d).unwrap(), x.scalar_mul(2));
        // f + (-f) = 0
        assert!(s.add(&s.neg()).unwrap().is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let x = var(0);
        let y = var(1);
        let prod = x.add(&y).unwrap().mul(&x.sub(&y).unwrap()).unwrap();
        let expect = x.mul(&x).unwrap().sub(&y.mul(&y).unwrap()).unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn leading_term_by_order() {
        let f3 = field();
        // b^2 - ac in k[a,b,c]
        let b2 = Polynomial::monomial(f3, Monomial::new(vec![0, 2, 0]), 1);
        let ac = Polynomial::monomial(f3, Monomial::new(vec![1, 0, 1]), 1);
        let f = b2.sub(&ac).unwrap();
        assert_eq!(f.leading_term(MonomialOrder::Grevlex).unwrap().0.exps(), &[0, 2, 0]);

        // x + y^2 under lex x > y
        let x = Polynomial::monomial(f3, Monomial::new(vec![1, 0]), 1);
        let y2 = Polynomial::monomial(f3, Monomial::new(vec![0, 2]), 1);
        let g = x.add(&y2).unwrap();
        assert_eq!(g.leading_term(MonomialOrder::Lex).unwrap().0.exps(), &[1, 0]);
        assert_eq!(g.leading_term(MonomialOrder::Grevlex).unwrap().0.exps(), &[0, 2]);
    }

    #[test]
    fn zero_has_no_leading_term() {
        assert_eq!(
            Polynomial::zero(field(), 2).leading_term(MonomialOrder::Grevlex),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn exact_division() {
        let x = var(0);
        let y = var(1);
        let f = x.add(&y).unwrap();
        let g = x.sub(&y).unwrap();
        let prod = f.mul(&g).unwrap();
        assert_eq!(prod.exact_div(&f).unwrap(), g);
        assert_eq!(prod.exact_div(&g).unwrap(), f);
        assert_eq!(f.exact_div(&x), Err(Error::InexactDivision));
    }

    #[test]
    fn arity_mismatch_is_caught() {
        let f = Polynomial::one(field(), 2);
        let g = Polynomial::one(field(), 3);
        assert!(matches!(f.add(&g), Err(Error::ArityMismatch(2, 3))));
    }
}
