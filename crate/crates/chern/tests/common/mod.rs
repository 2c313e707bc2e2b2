//! Independent oracles: lattice-point counting for monomial colengths,
//! numerical-semigroup gap counting, and brute-force integral-closure
//! membership. These know nothing about Groebner bases; they exist so the
//! engine's answers are checked against arithmetic a reviewer can redo by
//! hand.

// Each integration-test binary uses its own subset of these helpers.
#![allow(dead_code)]

use chern::field::PrimeField;
use chern::monomial::Monomial;
use chern::poly::Polynomial;

pub fn field() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

pub fn mono2(a: u16, b: u16) -> Polynomial {
    Polynomial::monomial(field(), Monomial::new(vec![a, b]), 1)
}

/// Colength of a monomial ideal in k[x,y] by scanning the lattice box:
/// count exponents not above any generator.
pub fn lattice_colength(gens: &[(u32, u32)]) -> u64 {
    let bound_a = gens.iter().filter(|g| g.1 == 0).map(|g| g.0).min();
    let bound_b = gens.iter().filter(|g| g.0 == 0).map(|g| g.1).min();
    let (bound_a, bound_b) = match (bound_a, bound_b) {
        (Some(a), Some(b)) => (a, b),
        _ => panic!("ideal is not m-primary: missing a pure power"),
    };
    let mut count = 0;
    for a in 0..bound_a {
        for b in 0..bound_b {
            if !gens.iter().any(|&(ga, gb)| a >= ga && b >= gb) {
                count += 1;
            }
        }
    }
    count
}

/// Exponent set of the n-th power of a monomial ideal, up to a box bound.
pub fn monomial_power(gens: &[(u32, u32)], n: u32) -> Vec<(u32, u32)> {
    let mut cur = vec![(0u32, 0u32)];
    for _ in 0..n {
        let mut next = Vec::new();
        for &(a, b) in &cur {
            for &(ga, gb) in gens {
                let p = (a + ga, b + gb);
                if !next.contains(&p) {
                    next.push(p);
                }
            }
        }
        cur = next;
    }
    cur
}

/// λ(R/I^n) for a monomial ideal in k[x,y], by lattice counting on the
/// generator exponents of the power.
pub fn lattice_power_colength(gens: &[(u32, u32)], n: u32) -> u64 {
    lattice_colength(&monomial_power(gens, n))
}

/// Brute-force integral-closure membership for monomial ideals in k[x,y]:
/// (a, b) lies in the closure of I iff k·(a, b) is componentwise above some
/// exponent of I^k for some k. A witness k <= 24 suffices for the small
/// cases used in tests.
pub fn in_closure_brute(gens: &[(u32, u32)], point: (u32, u32)) -> bool {
    for k in 1..=24u32 {
        let power = monomial_power(gens, k);
        let target = (point.0 * k, point.1 * k);
        if power.iter().any(|&(a, b)| target.0 >= a && target.1 >= b) {
            return true;
        }
    }
    false
}

/// λ(R/m^n) for the semigroup ring k[[t^s : s in S]] of a numerical
/// semigroup S = <g_1..g_r>: count elements of S not reachable as a sum of
/// n generators plus an element of S.
pub fn semigroup_power_colength(generators: &[u32], n: u32) -> u64 {
    let bound = (generators.iter().max().unwrap() * (n + 2) + 64) as usize;
    // Membership table for S.
    let mut in_s = vec![false; bound];
    in_s[0] = true;
    for v in 1..bound {
        if generators.iter().any(|&g| v >= g as usize && in_s[v - g as usize]) {
            in_s[v] = true;
        }
    }
    // Membership table for m^n = { g_{i_1} + ... + g_{i_n} + s : s in S }.
    let mut layer = vec![false; bound];
    layer[0] = true;
    for _ in 0..n {
        let mut next = vec![false; bound];
        for v in 0..bound {
            if layer[v] {
                for &g in generators {
                    if v + (g as usize) < bound {
                        next[v + g as usize] = true;
                    }
                }
            }
        }
        layer = next;
    }
    let mut in_mn = vec![false; bound];
    for v in 0..bound {
        if layer[v] {
            for s in 0..bound - v {
                if in_s[s] {
                    in_mn[v + s] = true;
                }
            }
        }
    }
    (0..bound).filter(|&v| in_s[v] && !in_mn[v]).count() as u64
}
