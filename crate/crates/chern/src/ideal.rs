use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner::{buchberger, eliminate, normal_form, GroebnerBasis, ResourceCaps};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

/// A length, which the staircase count may report as infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Result<u64> {
        match self {
            Length::Finite(n) => Ok(n),
            Length::Infinite => Err(Error::InfiniteLength),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Length::Finite(_))
    }
}

/// An ideal of the ambient polynomial ring, with its reduced grevlex
/// Groebner basis computed lazily and cached.
#[derive(Debug)]
pub struct Ideal {
    field: PrimeField,
    nvars: usize,
    gens: Vec<Polynomial>,
    caps: ResourceCaps,
    gb: OnceLock<std::result::Result<GroebnerBasis, Error>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(v) = self.gb.get() {
            let _ = gb.set(v.clone());
        }
        Ideal { field: self.field, nvars: self.nvars, gens: self.gens.clone(), caps: self.caps, gb }
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        match (self.groebner(), other.groebner()) {
            (Ok(a), Ok(b)) => a.elements() == b.elements(),
            _ => false,
        }
    }
}

impl Ideal {
    pub fn new(field: PrimeField, nvars: usize, gens: Vec<Polynomial>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { field, nvars, gens, caps: ResourceCaps::default(), gb: OnceLock::new() }
    }

    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        Ideal::new(field, nvars, Vec::new())
    }

    pub fn unit(field: PrimeField, nvars: usize) -> Self {
        let one = Polynomial::one(field, nvars);
        Ideal::new(field, nvars, vec![one])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        self.gb
            .get_or_init(|| buchberger(&self.gens, MonomialOrder::Grevlex, self.caps))
            .as_ref()
            .map_err(|e| e.clone())
    }

    pub fn contains_poly(&self, f: &Polynomial) -> Result<bool> {
        Ok(normal_form(f, self.groebner()?).is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in other.gens() {
            if !self.contains_poly(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.groebner()?.elements() == other.groebner()?.elements())
    }

    pub fn is_unit_ideal(&self) -> Result<bool> {
        Ok(self.groebner()?.is_trivial())
    }

    /// Replace the generator list by the reduced basis. Tames generator
    /// growth in iterated products.
    pub fn interreduced(&self) -> Result<Ideal> {
        let gb = self.groebner()?.clone();
        let gens = gb.elements().to_vec();
        let cell = OnceLock::new();
        let _ = cell.set(Ok(gb));
        Ok(Ideal { field: self.field, nvars: self.nvars, gens, caps: self.caps, gb: cell })
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        Ideal::new(self.field, self.nvars, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b)?);
            }
        }
        Ok(Ideal::new(self.field, self.nvars, gens))
    }

    /// n-fold product, interreduced after each step; the 0th power is (1).
    pub fn power(&self, n: u32) -> Result<Ideal> {
        let mut acc = Ideal::unit(self.field, self.nvars);
        for _ in 0..n {
            acc = acc.product(self)?.interreduced()?;
        }
        Ok(acc)
    }

    /// Multiply by a single ring element.
    pub fn scale(&self, f: &Polynomial) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.mul(f)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(self.field, self.nvars, gens))
    }

    /// Intersection via the tag-variable trick: <tA, (1-t)B> ∩ k[x].
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(Ideal::zero(self.field, self.nvars));
        }
        let t = Polynomial::monomial(self.field, Monomial::var(self.nvars + 1, 0), 1);
        let one_minus_t = Polynomial::one(self.field, self.nvars + 1).sub(&t)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            gens.push(a.extend_vars_front(1).mul(&t)?);
        }
        for b in &other.gens {
            gens.push(b.extend_vars_front(1).mul(&one_minus_t)?);
        }
        let mut keep = vec![true; self.nvars + 1];
        keep[0] = false;
        let out = eliminate(&gens, &keep, self.caps)?;
        let gens = out.into_iter().map(|g| g.contract_vars_front(1)).collect();
        Ok(Ideal::new(self.field, self.nvars, gens))
    }

    /// Colon ideal (A : B), generator by generator: (A : b) = (A ∩ (b)) / b.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        let mut acc: Option<Ideal> = None;
        for b in &other.gens {
            if b.is_zero() {
                return Err(Error::ZeroDivisorGenerator);
            }
            let principal = Ideal::new(self.field, self.nvars, vec![b.clone()]);
            let meet = self.intersect(&principal)?;
            let gens = meet
                .gens()
                .iter()
                .map(|g| g.exact_div(b))
                .collect::<Result<Vec<_>>>()?;
            let quo = Ideal::new(self.field, self.nvars, gens);
            acc = Some(match acc {
                None => quo,
                Some(prev) => prev.intersect(&quo)?,
            });
        }
        match acc {
            // Colon by the zero ideal is the unit ideal.
            None => Ok(Ideal::unit(self.field, self.nvars)),
            Some(i) => i.interreduced(),
        }
    }

    pub fn is_monomial_ideal(&self) -> bool {
        self.gens.iter().all(|g| g.is_monomial())
    }

    /// Leading monomials of the reduced grevlex basis (the initial ideal).
    pub fn initial_monomials(&self) -> Result<Vec<Monomial>> {
        Ok(self.groebner()?.leading_monomials())
    }

    /// Number of standard monomials (monomials outside the initial ideal),
    /// i.e. dim_k of the quotient by this ideal.
    pub fn colength(&self) -> Result<Length> {
        let lts = self.initial_monomials()?;
        if lts.iter().any(|m| m.is_one()) {
            return Ok(Length::Finite(0));
        }
        // Finite iff every variable has a pure power among the leading terms.
        let mut bounds = vec![None::<u16>; self.nvars];
        for m in &lts {
            let support = m.support();
            if support.len() == 1 {
                let v = support[0];
                let e = m.exps()[v];
                bounds[v] = Some(bounds[v].map_or(e, |b| b.min(e)));
            }
        }
        if bounds.iter().any(|b| b.is_none()) {
            return Ok(Length::Infinite);
        }
        let bounds: Vec<u16> = bounds.into_iter().map(|b| b.unwrap()).collect();
        // Walk the box below the pure-power staircase corners.
        let mut count = 0u64;
        let mut exps = vec![0u16; self.nvars];
        'walk: loop {
            let m = Monomial::new(exps.clone());
            if !lts.iter().any(|lt| lt.divides(&m)) {
                count += 1;
            }
            for i in 0..self.nvars {
                if exps[i] + 1 < bounds[i] {
                    exps[i] += 1;
                    continue 'walk;
                }
                exps[i] = 0;
            }
            break;
        }
        Ok(Length::Finite(count))
    }

    /// Krull dimension of P modulo a monomial ideal: the largest variable
    /// subset S such that no generator is supported inside S.
    pub fn monomial_dimension(&self) -> Result<usize> {
        if !self.is_monomial_ideal() {
            return Err(Error::NotMonomial);
        }
        let supports: Vec<Vec<usize>> = self.gens.iter().map(|g| g.terms()[0].0.support()).collect();
        if supports.iter().any(|s| s.is_empty()) {
            // A unit generator: the quotient is the zero ring.
            return Ok(0);
        }
        let mut best = 0usize;
        for mask in 0u32..(1 << self.nvars) {
            let subset: Vec<usize> = (0..self.nvars).filter(|&i| mask >> i & 1 == 1).collect();
            let blocked = supports.iter().any(|s| s.iter().all(|v| subset.contains(v)));
            if !blocked {
                best = best.max(subset.len());
            }
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    fn mono2(exps: &[u16], c: i64) -> Polynomial {
        Polynomial::monomial(field(), Monomial::new(exps.to_vec()), c)
    }

    fn monomial_ideal(exps: &[&[u16]]) -> Ideal {
        let gens = exps.iter().map(|e| mono2(e, 1)).collect();
        Ideal::new(field(), exps[0].len(), gens)
    }

    #[test]
    fn product_and_power() {
        let x = monomial_ideal(&[&[1, 0]]);
        let y = monomial_ideal(&[&[0, 1]]);
        let xy = x.product(&y).unwrap();
        assert!(xy.equals(&monomial_ideal(&[&[1, 1]])).unwrap());

        // (x^2, xy, y^2)^2 = m^4
        let m2 = monomial_ideal(&[&[2, 0], &[1, 1], &[0, 2]]);
        let m4 = monomial_ideal(&[&[4, 0], &[3, 1], &[2, 2], &[1, 3], &[0, 4]]);
        assert!(m2.power(2).unwrap().equals(&m4).unwrap());

        let unit = m2.power(0).unwrap();
        assert!(unit.is_unit_ideal().unwrap());
    }

    #[test]
    fn intersections() {
        let x = monomial_ideal(&[&[1, 0]]);
        let y = monomial_ideal(&[&[0, 1]]);
        assert!(x.intersect(&y).unwrap().equals(&monomial_ideal(&[&[1, 1]])).unwrap());

        // (x^2, y) ∩ (x) = (x^2, xy)
        let a = monomial_ideal(&[&[2, 0], &[0, 1]]);
        let expect = monomial_ideal(&[&[2, 0], &[1, 1]]);
        assert!(a.intersect(&x).unwrap().equals(&expect).unwrap());

        // idempotence
        assert!(a.intersect(&a).unwrap().equals(&a).unwrap());
    }

    #[test]
    fn colons() {
        // (x^2, xy) : (x) = (x, y)
        let a = monomial_ideal(&[&[2, 0], &[1, 1]]);
        let x = monomial_ideal(&[&[1, 0]]);
        let m = monomial_ideal(&[&[1, 0], &[0, 1]]);
        assert!(a.colon(&x).unwrap().equals(&m).unwrap());

        // (xy, y^2) : (y) = (x, y)
        let b = monomial_ideal(&[&[1, 1], &[0, 2]]);
        let y = monomial_ideal(&[&[0, 1]]);
        assert!(b.colon(&y).unwrap().equals(&m).unwrap());

        // (x^4) : (x, y) = (x^4) ∩ (x^3) = (x^4)? The y-colon gives (x^4),
        // the x-colon gives (x^3); the intersection is (x^4).
        let x4 = monomial_ideal(&[&[4, 0]]);
        assert!(x4.colon(&m).unwrap().equals(&x4).unwrap());
    }

    #[test]
    fn colon_times_divisor_is_contained() {
        let a = monomial_ideal(&[&[2, 0], &[1, 1]]);
        let b = monomial_ideal(&[&[1, 0], &[0, 1]]);
        let q = a.colon(&b).unwrap();
        let prod = q.product(&b).unwrap();
        assert!(a.contains_ideal(&prod).unwrap());
    }

    #[test]
    fn colengths() {
        assert_eq!(
            monomial_ideal(&[&[2, 0], &[1, 1], &[0, 2]]).colength().unwrap(),
            Length::Finite(3)
        );
        // (x^4, x^3 y, x y^3, y^4): 10 standard monomials of degree <= 3
        // plus x^2 y^2.
        assert_eq!(
            monomial_ideal(&[&[4, 0], &[3, 1], &[1, 3], &[0, 4]]).colength().unwrap(),
            Length::Finite(11)
        );
        assert_eq!(monomial_ideal(&[&[1, 0]]).colength().unwrap(), Length::Infinite);
    }

    #[test]
    fn colength_of_nonmonomial_uses_initial_ideal() {
        // (x^2 - y, y^2): initial ideal contains y... GB: {x^2 - y, y^2}
        // standard monomials 1, x, y, xy -> 4
        let f = mono2(&[2, 0], 1).add(&mono2(&[0, 1], -1)).unwrap();
        let g = mono2(&[0, 2], 1);
        let i = Ideal::new(field(), 2, vec![f, g]);
        assert_eq!(i.colength().unwrap(), Length::Finite(4));
    }

    #[test]
    fn monomial_dimensions() {
        assert_eq!(monomial_ideal(&[&[0, 2], &[1, 1]]).monomial_dimension().unwrap(), 1);
        assert_eq!(Ideal::zero(field(), 2).monomial_dimension().unwrap(), 2);
        assert_eq!(monomial_ideal(&[&[1, 0], &[0, 1]]).monomial_dimension().unwrap(), 0);
    }

    #[test]
    fn colength_additivity_bound() {
        let a = monomial_ideal(&[&[2, 0], &[0, 2]]);
        let b = monomial_ideal(&[&[1, 1]]);
        let s = a.sum(&b);
        let ca = a.colength().unwrap();
        let cs = s.colength().unwrap();
        assert!(cs <= ca);
    }
}
