use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

/// Bounds that turn runaway computations into loud errors.
#[derive(Debug, Clone, Copy)]
pub struct ResourceCaps {
    pub max_pairs: usize,
    pub max_degree: u32,
}

impl Default for ResourceCaps {
    fn default() -> Self {
        ResourceCaps { max_pairs: 500_000, max_degree: 5_000 }
    }
}

/// The unique reduced Groebner basis of an ideal for a fixed order.
/// Elements are monic, auto-reduced, and sorted ascending by leading term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_term(self.order).expect("basis elements are nonzero").0.clone())
            .collect()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        normal_form(f, self).is_zero()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }
}

/// Remainder of `f` modulo the basis: no term divisible by any leading term.
pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Polynomial {
    reduce_full(f, &basis.elements, basis.order)
}

fn reduce_full(f: &Polynomial, gens: &[Polynomial], order: MonomialOrder) -> Polynomial {
    let field = f.field();
    let lts: Vec<(Monomial, u64)> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let (m, c) = g.leading_term(order).unwrap();
            (m.clone(), c)
        })
        .collect();
    let nz: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    let mut rem = f.clone();
    'outer: loop {
        // Reduce the largest reducible term under the order; terms strictly
        // decrease in the order, so this terminates.
        let mut candidates: Vec<usize> = (0..rem.terms().len()).collect();
        if order != MonomialOrder::Grevlex {
            // Canonical storage is grevlex-descending already.
            candidates.sort_by(|&i, &j| order.cmp(&rem.terms()[j].0, &rem.terms()[i].0));
        }
        for ti in candidates {
            let (m, c) = rem.terms()[ti].clone();
            for (gi, (lm, lc)) in lts.iter().enumerate() {
                if lm.divides(&m) {
                    let qm = lm.quotient_into(&m);
                    let qc = field.mul(c, field.inv(*lc));
                    rem = rem.sub(&nz[gi].term_mul(&qm, qc).unwrap()).unwrap();
                    continue 'outer;
                }
            }
        }
        return rem;
    }
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Polynomial {
    let field = f.field();
    let (fm, fc) = f.leading_term(order).unwrap();
    let (gm, gc) = g.leading_term(order).unwrap();
    let lcm = fm.lcm(gm);
    let fq = fm.quotient_into(&lcm);
    let gq = gm.quotient_into(&lcm);
    let a = f.term_mul(&fq, field.inv(fc)).unwrap();
    let b = g.term_mul(&gq, field.inv(gc)).unwrap();
    a.sub(&b).unwrap()
}

/// Buchberger's algorithm with the coprimality and chain criteria, normal
/// pair selection by lcm degree, and deterministic tie-breaking.
pub fn buchberger(
    gens: &[Polynomial],
    order: MonomialOrder,
    caps: ResourceCaps,
) -> Result<GroebnerBasis> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(g.clone());
        }
    }
    if basis.is_empty() {
        return Ok(GroebnerBasis { order, elements: Vec::new() });
    }
    // Deterministic starting order.
    basis.sort_by(|a, b| {
        order
            .cmp(a.leading_term(order).unwrap().0, b.leading_term(order).unwrap().0)
            .then_with(|| a.terms().len().cmp(&b.terms().len()))
    });

    let lt = |p: &Polynomial| -> Monomial { p.leading_term(order).unwrap().0.clone() };

    // Pair queue keyed by (lcm degree, lcm exponents, i, j).
    let mut queue: BTreeSet<(u32, Vec<u16>, usize, usize)> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let enqueue = |queue: &mut BTreeSet<(u32, Vec<u16>, usize, usize)>,
                       basis: &[Polynomial],
                       i: usize,
                       j: usize| {
        let lcm = lt(&basis[i]).lcm(&lt(&basis[j]));
        queue.insert((lcm.degree(), lcm.exps().to_vec(), i, j));
    };
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            enqueue(&mut queue, &basis, i, j);
        }
    }

    let mut processed = 0usize;
    while let Some(entry) = queue.iter().next().cloned() {
        queue.remove(&entry);
        let (_, _, i, j) = entry;
        processed += 1;
        if processed > caps.max_pairs {
            return Err(Error::ResourceCap(format!("pair queue exceeded {}", caps.max_pairs)));
        }
        done.insert((i, j));

        let lti = lt(&basis[i]);
        let ltj = lt(&basis[j]);
        // First criterion: coprime leading terms.
        if lti.is_coprime(&ltj) {
            continue;
        }
        // Chain criterion: some k with LT(k) | lcm(i,j) and both side pairs done.
        let lcm = lti.lcm(&ltj);
        let mut skip = false;
        for k in 0..basis.len() {
            if k == i || k == j {
                continue;
            }
            if lt(&basis[k]).divides(&lcm)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
            {
                skip = true;
                break;
            }
        }
        if skip {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = reduce_full(&s, &basis, order);
        if r.is_zero() {
            continue;
        }
        if r.total_degree() > caps.max_degree {
            return Err(Error::ResourceCap(format!("degree exceeded {}", caps.max_degree)));
        }
        let new_idx = basis.len();
        basis.push(r);
        for k in 0..new_idx {
            enqueue(&mut queue, &basis, k, new_idx);
        }
    }

    // Interreduce down to the unique reduced basis.
    Ok(GroebnerBasis { order, elements: autoreduce(basis, order) })
}

fn autoreduce(mut basis: Vec<Polynomial>, order: MonomialOrder) -> Vec<Polynomial> {
    // Drop elements whose leading term is divisible by another's.
    loop {
        let lts: Vec<Monomial> =
            basis.iter().map(|g| g.leading_term(order).unwrap().0.clone()).collect();
        let mut drop_idx = None;
        'search: for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i != j && lts[j].divides(&lts[i]) {
                    // Keep the one with the smaller leading term on ties.
                    if lts[i] == lts[j] && i < j {
                        continue;
                    }
                    drop_idx = Some(i);
                    break 'search;
                }
            }
        }
        match drop_idx {
            Some(i) => {
                basis.remove(i);
            }
            None => break,
        }
    }
    // Fully reduce each element against the others.
    loop {
        let mut changed = false;
        for i in 0..basis.len() {
            let others: Vec<Polynomial> = basis
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let r = reduce_full(&basis[i], &others, order).monic_under(order);
            if r != basis[i] {
                basis[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    basis.retain(|g| !g.is_zero());
    basis.sort_by(|a, b| {
        order.cmp(a.leading_term(order).unwrap().0, b.leading_term(order).unwrap().0)
    });
    basis
}

impl Polynomial {
    /// Scale so the leading coefficient under `order` is 1.
    fn monic_under(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            Err(_) => self.clone(),
            Ok((_, c)) => {
                let inv = self.field().inv(c);
                self.scalar_mul(inv)
            }
        }
    }
}

/// Generators of the intersection with the subring on the kept variables,
/// via a block elimination order on a permuted variable list.
pub fn eliminate(gens: &[Polynomial], keep: &[bool], caps: ResourceCaps) -> Result<Vec<Polynomial>> {
    let nvars = keep.len();
    if let Some(g) = gens.first() {
        if g.nvars() != nvars {
            return Err(Error::ArityMismatch(g.nvars(), nvars));
        }
    }
    let eliminated: Vec<usize> = (0..nvars).filter(|&i| !keep[i]).collect();
    let kept: Vec<usize> = (0..nvars).filter(|&i| keep[i]).collect();
    if eliminated.is_empty() {
        let gb = buchberger(gens, MonomialOrder::Grevlex, caps)?;
        return Ok(gb.elements().to_vec());
    }
    // perm maps old index -> new index; eliminated variables go first.
    let mut perm = vec![0usize; nvars];
    for (new, &old) in eliminated.iter().chain(kept.iter()).enumerate() {
        perm[old] = new;
    }
    let permuted: Vec<Polynomial> = gens.iter().map(|g| g.permute_vars(&perm)).collect();
    let gb = buchberger(&permuted, MonomialOrder::Elimination(eliminated.len()), caps)?;

    let mut inverse = vec![0usize; nvars];
    for (old, &new) in perm.iter().enumerate() {
        inverse[new] = old;
    }
    let mut out = Vec::new();
    for g in gb.elements() {
        let in_subring = g
            .terms()
            .iter()
            .all(|(m, _)| m.exps()[..eliminated.len()].iter().all(|&e| e == 0));
        if in_subring {
            out.push(g.permute_vars(&inverse));
        }
    }
    Ok(out)
}
