//! Finite groups: a small trait plus the concrete groups used by the models.

pub mod fmat;
pub mod forms;
pub mod heis;
pub mod orth;
pub mod product;
pub mod symplectic;
pub mod unitary;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use crate::arith::lcm;
use crate::error::{Error, Result};

pub use fmat::FMat;
pub use forms::{FormData, FormKind, Fq2};
pub use heis::{heis_mul, HeisElem, HeisGroup};
pub use orth::{OrthElem, OrthGroup};
pub use product::{embed_sp_mu, HUGroup, Product, SemiElem, SemiGroup};
pub use symplectic::{is_symplectic, sp_enumerate, sp_generators, sp_order, SpGroup};
pub use unitary::{fixed_dim, unitary_enumerate, unitary_order, MatGroup};

pub trait FiniteGroup {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn generators(&self) -> Vec<Self::Elem>;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.identity();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    fn element_order(&self, a: &Self::Elem) -> u64 {
        let id = self.identity();
        let mut x = a.clone();
        let mut k = 1;
        while x != id {
            x = self.mul(&x, a);
            k += 1;
        }
        k
    }
}

/// Subgroup generated by `gens`, in canonical (sorted) order.
pub fn closure<G: FiniteGroup>(g: &G, gens: &[G::Elem], budget: u64) -> Result<Vec<G::Elem>> {
    let id = g.identity();
    let mut seen: HashSet<G::Elem> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = g.mul(&x, s);
            if seen.insert(y.clone()) {
                if seen.len() as u64 > budget {
                    return Err(Error::Budget {
                        what: "group enumeration".into(),
                        needed: seen.len() as u128,
                        limit: budget as u128,
                    });
                }
                queue.push_back(y);
            }
        }
    }
    let mut v: Vec<G::Elem> = seen.into_iter().collect();
    v.sort();
    Ok(v)
}

/// Greedy generating set: scan elements in order and keep each one that is not
/// already in the subgroup generated by the previous picks.
pub fn greedy_generators<G: FiniteGroup>(g: &G, elems: &[G::Elem]) -> Vec<G::Elem> {
    let mut gens: Vec<G::Elem> = Vec::new();
    let mut sub: HashSet<G::Elem> = HashSet::new();
    sub.insert(g.identity());
    for e in elems {
        if sub.contains(e) {
            continue;
        }
        gens.push(e.clone());
        sub = closure(g, &gens, u64::MAX).unwrap().into_iter().collect();
        if sub.len() == elems.len() {
            break;
        }
    }
    gens
}

/// A fully enumerated group with an element index.
pub struct Enumerated<G: FiniteGroup> {
    pub group: G,
    elems: Vec<G::Elem>,
    index: HashMap<G::Elem, usize>,
    gens: Vec<G::Elem>,
}

impl<G: FiniteGroup> Enumerated<G> {
    /// Enumerates the group generated by `group.generators()`.
    pub fn new(group: G, budget: u64) -> Result<Self> {
        let gens = group.generators();
        let elems = closure(&group, &gens, budget)?;
        Ok(Self::from_parts(group, elems, gens))
    }

    /// Uses a known element list (must be the whole group) and picks a greedy
    /// generating set from it.
    pub fn from_elements(group: G, elems: Vec<G::Elem>) -> Self {
        let gens = greedy_generators(&group, &elems);
        Self::from_parts(group, elems, gens)
    }

    pub fn from_parts(group: G, elems: Vec<G::Elem>, gens: Vec<G::Elem>) -> Self {
        let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Enumerated { group, elems, index, gens }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[G::Elem] {
        &self.elems
    }

    pub fn elem(&self, i: usize) -> &G::Elem {
        &self.elems[i]
    }

    pub fn idx(&self, e: &G::Elem) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn generators(&self) -> &[G::Elem] {
        &self.gens
    }

    pub fn identity_idx(&self) -> usize {
        self.idx(&self.group.identity()).expect("identity present")
    }

    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        self.idx(&self.group.mul(&self.elems[i], &self.elems[j])).expect("closed under product")
    }

    pub fn inv_idx(&self, i: usize) -> usize {
        self.idx(&self.group.inv(&self.elems[i])).expect("closed under inverse")
    }

    pub fn exponent(&self) -> u64 {
        self.elems.iter().fold(1, |acc, e| lcm(acc, self.group.element_order(e)))
    }

    /// Conjugacy classes as sorted index lists, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        let gens_inv: Vec<(G::Elem, G::Elem)> =
            self.gens.iter().map(|s| (s.clone(), self.group.inv(s))).collect();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut members = vec![start];
            class_of[start] = c;
            let mut k = 0;
            while k < members.len() {
                let x = &self.elems[members[k]];
                for (s, si) in &gens_inv {
                    let y = self.group.mul(&self.group.mul(si, x), s);
                    let j = self.idx(&y).expect("closed under conjugation");
                    if class_of[j] == usize::MAX {
                        class_of[j] = c;
                        members.push(j);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }
}

/// lcm of element orders.
pub fn group_exponent<G: FiniteGroup>(g: &Enumerated<G>) -> u64 {
    g.exponent()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Z/n as a test group.
    struct Cyclic(u64);

    impl FiniteGroup for Cyclic {
        type Elem = u64;
        fn identity(&self) -> u64 {
            0
        }
        fn mul(&self, a: &u64, b: &u64) -> u64 {
            (a + b) % self.0
        }
        fn inv(&self, a: &u64) -> u64 {
            (self.0 - a) % self.0
        }
        fn generators(&self) -> Vec<u64> {
            vec![2, 3]
        }
    }

    #[test]
    fn enumeration_and_exponent() {
        let g = Enumerated::new(Cyclic(12), 100).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.exponent(), 12);
        assert_eq!(g.conjugacy_classes().len(), 12);
        assert!(Enumerated::new(Cyclic(12), 5).is_err());
        let gens = greedy_generators(&Cyclic(12), g.elements());
        assert_eq!(gens, vec![1]);
    }
}
