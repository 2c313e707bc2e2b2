use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::ideal::{Ideal, Length};
use crate::monomial::Monomial;
use crate::poly::Polynomial;

/// Saturation cap for the Artin-Rees length trick in [`subquotient_length`].
pub const SATURATION_CAP: u32 = 40;
/// Consecutive equal values required before a saturated length is trusted.
pub const STABILIZATION_WINDOW: u32 = 3;

/// The local ring R = k[x_1..x_m]/Q at the ideal of the coordinate origin.
///
/// All ideal arithmetic happens on lifts in the ambient polynomial ring;
/// lengths are valid local lengths because every module we measure is
/// supported at the origin.
#[derive(Debug, Clone)]
pub struct PresentedRing {
    field: PrimeField,
    vars: Vec<String>,
    quotient: Ideal,
    dim: usize,
}

/// An ideal of a presented ring, carried as its full preimage in the
/// ambient ring (so the lift always contains Q).
#[derive(Debug, Clone)]
pub struct RingIdeal {
    ring: Arc<PresentedRing>,
    lift: Ideal,
}

impl PresentedRing {
    /// Build R = P/Q; computes the Krull dimension from the initial ideal of
    /// Q and rejects dimension 0.
    pub fn new(field: PrimeField, vars: Vec<String>, quotient_gens: Vec<Polynomial>) -> Result<Arc<Self>> {
        let nvars = vars.len();
        let quotient = Ideal::new(field, nvars, quotient_gens);
        let initial: Vec<Polynomial> = quotient
            .initial_monomials()?
            .into_iter()
            .map(|m| Polynomial::monomial(field, m, 1))
            .collect();
        let initial_ideal = Ideal::new(field, nvars, initial);
        let dim = initial_ideal.monomial_dimension()?;
        if dim == 0 {
            return Err(Error::ZeroDimensionalRing);
        }
        Ok(Arc::new(PresentedRing { field, vars, quotient, dim }))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn quotient(&self) -> &Ideal {
        &self.quotient
    }

    /// The maximal ideal (x_1, ..., x_m) as an ambient ideal.
    pub fn maximal_ideal_ambient(&self) -> Ideal {
        let gens = (0..self.nvars())
            .map(|i| Polynomial::monomial(self.field, Monomial::var(self.nvars(), i), 1))
            .collect();
        Ideal::new(self.field, self.nvars(), gens)
    }
}

impl RingIdeal {
    /// Wrap ambient generators as an ideal of R; Q is adjoined to the lift.
    pub fn from_gens(ring: Arc<PresentedRing>, gens: Vec<Polynomial>) -> RingIdeal {
        let ambient = Ideal::new(ring.field(), ring.nvars(), gens);
        let lift = ambient.sum(ring.quotient());
        RingIdeal { ring, lift }
    }

    pub fn from_lift(ring: Arc<PresentedRing>, lift: Ideal) -> RingIdeal {
        let lift = lift.sum(ring.quotient());
        RingIdeal { ring, lift }
    }

    pub fn zero(ring: Arc<PresentedRing>) -> RingIdeal {
        let lift = ring.quotient().clone();
        RingIdeal { ring, lift }
    }

    pub fn unit(ring: Arc<PresentedRing>) -> RingIdeal {
        let lift = Ideal::unit(ring.field(), ring.nvars());
        RingIdeal { ring, lift }
    }

    pub fn maximal(ring: Arc<PresentedRing>) -> RingIdeal {
        let m = ring.maximal_ideal_ambient();
        RingIdeal::from_lift(ring, m)
    }

    pub fn ring(&self) -> &Arc<PresentedRing> {
        &self.ring
    }

    pub fn lift(&self) -> &Ideal {
        &self.lift
    }

    pub fn sum(&self, other: &RingIdeal) -> RingIdeal {
        RingIdeal { ring: self.ring.clone(), lift: self.lift.sum(&other.lift) }
    }

    /// Ring-level product: lifts multiply, then Q is adjoined back.
    pub fn product(&self, other: &RingIdeal) -> Result<RingIdeal> {
        let prod = self.lift.product(&other.lift)?;
        Ok(RingIdeal {
            ring: self.ring.clone(),
            lift: prod.sum(self.ring.quotient()).interreduced()?,
        })
    }

    pub fn power(&self, n: u32) -> Result<RingIdeal> {
        let mut acc = RingIdeal::unit(self.ring.clone());
        for _ in 0..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Intersection of ideals of R; both lifts contain Q, so the ambient
    /// intersection is the correct lift.
    pub fn intersect(&self, other: &RingIdeal) -> Result<RingIdeal> {
        let lift = self.lift.intersect(&other.lift)?;
        Ok(RingIdeal { ring: self.ring.clone(), lift })
    }

    /// Colon of ideals of R, computed on lifts; valid since Q ⊆ self.lift.
    pub fn colon(&self, other: &RingIdeal) -> Result<RingIdeal> {
        let lift = self.lift.colon(&other.lift)?;
        Ok(RingIdeal { ring: self.ring.clone(), lift })
    }

    pub fn colon_element(&self, x: &Polynomial) -> Result<RingIdeal> {
        let other = Ideal::new(self.ring.field(), self.ring.nvars(), vec![x.clone()]);
        let lift = self.lift.colon(&other)?;
        Ok(RingIdeal { ring: self.ring.clone(), lift })
    }

    pub fn contains(&self, other: &RingIdeal) -> Result<bool> {
        self.lift.contains_ideal(&other.lift)
    }

    pub fn contains_poly(&self, f: &Polynomial) -> Result<bool> {
        self.lift.contains_poly(f)
    }

    pub fn equals(&self, other: &RingIdeal) -> Result<bool> {
        self.lift.equals(&other.lift)
    }

    pub fn is_unit(&self) -> Result<bool> {
        self.lift.is_unit_ideal()
    }

    pub fn is_monomial(&self) -> bool {
        self.lift.is_monomial_ideal()
    }
}

/// λ(R/I) as the colength of the lifted ideal. Valid as a local length for
/// m-primary-supported quotients; `is_m_primary` certifies that.
pub fn length_of_quotient(i: &RingIdeal) -> Result<Length> {
    i.lift.colength()
}

/// m-primariness: finite colength plus a pure-power membership witness for
/// every variable.
pub fn is_m_primary(i: &RingIdeal) -> Result<bool> {
    let len = match length_of_quotient(i)? {
        Length::Infinite => return Ok(false),
        Length::Finite(n) => n,
    };
    if len == 0 {
        // Unit ideal: not proper, not m-primary.
        return Ok(false);
    }
    let field = i.ring.field();
    let nvars = i.ring.nvars();
    let e = u16::try_from(len).map_err(|_| Error::ExponentOverflow)?;
    for v in 0..nvars {
        let power = Polynomial::monomial(field, Monomial::var(nvars, v).pow(e)?, 1);
        if !i.contains_poly(&power)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// x is a regular element of R iff (Q : x) = Q in the ambient ring.
pub fn is_regular_element(ring: &Arc<PresentedRing>, x: &Polynomial) -> Result<bool> {
    if ring.quotient().contains_poly(x)? {
        return Ok(false);
    }
    let colon = ring.quotient().colon(&Ideal::new(ring.field(), ring.nvars(), vec![x.clone()]))?;
    colon.equals(ring.quotient())
}

/// The annihilator (0 : x) of a ring element, as an ideal of R.
pub fn annihilator(ring: &Arc<PresentedRing>, x: &Polynomial) -> Result<RingIdeal> {
    let colon = ring.quotient().colon(&Ideal::new(ring.field(), ring.nvars(), vec![x.clone()]))?;
    Ok(RingIdeal::from_lift(ring.clone(), colon))
}

/// The annihilator (0 : J) of a ring ideal.
pub fn annihilator_of_ideal(ring: &Arc<PresentedRing>, j: &RingIdeal) -> Result<RingIdeal> {
    let colon = ring.quotient().colon(j.lift())?;
    Ok(RingIdeal::from_lift(ring.clone(), colon))
}

/// λ(A/B) for nested ideals of R with A/B of finite length. When B is
/// m-primary this is the colength difference. Otherwise we saturate:
/// λ(R/(B + m^N)) − λ(R/(A + m^N)) equals λ(A/B) once m^N ∩ A ⊆ B, and
/// Artin-Rees guarantees such an N exists. A fixed stabilization window is
/// not sound here — the difference can sit on a transient plateau — so the
/// containment is checked as a certificate before returning.
pub fn subquotient_length(a: &RingIdeal, b: &RingIdeal) -> Result<u64> {
    if !a.contains(b)? {
        return Err(Error::NotNested);
    }
    if let Length::Finite(lb) = b.lift().colength()? {
        let la = a.lift().colength()?.finite()?;
        return Ok(lb - la);
    }
    let ring = a.ring();
    let m = ring.maximal_ideal_ambient();
    let mut m_power = Ideal::unit(ring.field(), ring.nvars());
    for _n in 1..=SATURATION_CAP {
        m_power = m_power.product(&m)?.interreduced()?;
        if b.lift().contains_ideal(&m_power.intersect(a.lift())?)? {
            let b_sat = b.lift().sum(&m_power).colength()?.finite()?;
            let a_sat = a.lift().sum(&m_power).colength()?.finite()?;
            return Ok(b_sat - a_sat);
        }
    }
    Err(Error::NoStabilization)
}
