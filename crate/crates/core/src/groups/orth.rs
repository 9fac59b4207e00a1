//! O(W, Q) ≅ μ_{q+1} ⋊ Z/2, the dihedral group of order 2(q+1).

use super::FiniteGroup;

/// ζ^z F^k where ζ is the fixed generator of μ_{q+1} and F acts by inversion.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct OrthElem {
    pub z: u32,
    pub k: u8,
}

#[derive(Clone, Copy, Debug)]
pub struct OrthGroup {
    pub q: u64,
}

impl OrthGroup {
    pub fn m(&self) -> u32 {
        (self.q + 1) as u32
    }

    /// Rotations first, then reflections.
    pub fn elements(&self) -> Vec<OrthElem> {
        (0..2u8).flat_map(|k| (0..self.m()).map(move |z| OrthElem { z, k })).collect()
    }
}

impl FiniteGroup for OrthGroup {
    type Elem = OrthElem;

    fn identity(&self) -> OrthElem {
        OrthElem { z: 0, k: 0 }
    }

    /// (x, k)(y, l) = (x y^{(-1)^k}, k + l).
    fn mul(&self, a: &OrthElem, b: &OrthElem) -> OrthElem {
        let m = self.m();
        let y = if a.k == 0 { b.z } else { (m - b.z) % m };
        OrthElem { z: (a.z + y) % m, k: a.k ^ b.k }
    }

    fn inv(&self, a: &OrthElem) -> OrthElem {
        let m = self.m();
        if a.k == 0 {
            OrthElem { z: (m - a.z) % m, k: 0 }
        } else {
            *a
        }
    }

    fn generators(&self) -> Vec<OrthElem> {
        vec![OrthElem { z: 1, k: 0 }, OrthElem { z: 0, k: 1 }]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Enumerated;

    #[test]
    fn dihedral_structure() {
        for q in [2u64, 3, 4] {
            let o = OrthGroup { q };
            let e = Enumerated::new(o, 100).unwrap();
            assert_eq!(e.order() as u64, 2 * (q + 1));
            let r = OrthElem { z: 1, k: 0 };
            let s = OrthElem { z: 0, k: 1 };
            assert_eq!(o.mul(&o.mul(&s, &r), &s), o.inv(&r));
            let classes = e.conjugacy_classes().len() as u64;
            let m = q + 1;
            let want = if m % 2 == 0 { m / 2 + 3 } else { (m - 1) / 2 + 2 };
            assert_eq!(classes, want);
        }
    }
}
