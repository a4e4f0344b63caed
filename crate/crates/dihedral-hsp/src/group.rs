//! Exact arithmetic in the dihedral group D_N and its subgroups.
//!
//! Elements are pairs (a, b) with a ∈ Z_N and b ∈ {0, 1}: (a, 0) is the
//! rotation by a steps, (a, 1) a reflection. Multiplication follows the
//! semidirect product
//!
//! ```text
//! (a1, b1)(a2, b2) = (a1 + (-1)^b1 * a2  mod N,  b1 xor b2)
//! ```
//!
//! All arithmetic is integer-exact; rotation parts are kept canonical in
//! [0, N). Values are immutable once built and safe to share across threads.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// The dihedral group D_N of order 2N, the symmetry group of an N-gon.
///
/// N = 1 and N = 2 are degenerate (commutative) and fully supported.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DihedralGroup {
    n: u64,
}

impl DihedralGroup {
    /// Panics if `n == 0`.
    pub fn new(n: u64) -> Self {
        assert!(n >= 1, "polygon order must be at least 1");
        Self { n }
    }

    pub fn n(self) -> u64 {
        self.n
    }

    pub fn order(self) -> u64 {
        2 * self.n
    }

    pub fn identity(self) -> GroupElement {
        GroupElement { a: 0, b: 0 }
    }

    /// Canonical element with the rotation part reduced into [0, N) and the
    /// reflection bit reduced mod 2.
    pub fn element(self, a: i64, b: u8) -> GroupElement {
        GroupElement {
            a: a.rem_euclid(self.n as i64) as u64,
            b: b & 1,
        }
    }

    pub fn rotation(self, a: i64) -> GroupElement {
        self.element(a, 0)
    }

    pub fn reflection(self, a: i64) -> GroupElement {
        self.element(a, 1)
    }

    pub fn multiply(self, g1: GroupElement, g2: GroupElement) -> GroupElement {
        let a = if g1.b == 1 {
            (g1.a + self.n - g2.a) % self.n
        } else {
            (g1.a + g2.a) % self.n
        };
        GroupElement { a, b: g1.b ^ g2.b }
    }

    pub fn inverse(self, g: GroupElement) -> GroupElement {
        if g.b == 1 {
            g // reflections are involutions
        } else {
            GroupElement {
                a: (self.n - g.a) % self.n,
                b: 0,
            }
        }
    }

    /// All 2N elements in (b, a)-lexicographic order: rotations first.
    pub fn elements(self) -> impl Iterator<Item = GroupElement> {
        let n = self.n;
        (0u8..2).flat_map(move |b| (0..n).map(move |a| GroupElement { a, b }))
    }

    /// Element with the given (b, a)-lexicographic index; inverse of
    /// [`GroupElement::index`]. Panics if out of range.
    pub fn element_at(self, index: usize) -> GroupElement {
        let idx = index as u64;
        assert!(idx < self.order(), "element index out of range");
        GroupElement {
            a: idx % self.n,
            b: (idx / self.n) as u8,
        }
    }
}

/// A single element (a, b) of some D_N.
///
/// The element does not carry its group; operations taking two elements live
/// on [`DihedralGroup`]. Ordering is (b, a)-lexicographic, which is also the
/// canonical ordering used for coset representatives and element indexing.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    a: u64,
    b: u8,
}

impl GroupElement {
    pub fn a(self) -> u64 {
        self.a
    }

    pub fn b(self) -> u8 {
        self.b
    }

    pub fn is_rotation(self) -> bool {
        self.b == 0
    }

    pub fn is_identity(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Position of this element in the (b, a)-lexicographic enumeration,
    /// i.e. `b * N + a`.
    pub fn index(self, group: DihedralGroup) -> usize {
        (self.b as usize) * group.n as usize + self.a as usize
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.b, self.a).cmp(&(other.b, other.a))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// A subgroup of D_N, stored as its full sorted element set plus the
/// generators it was built from.
///
/// Full enumeration is intended for N up to 2^16; the solvers only ever
/// materialize small subgroups at larger N.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: DihedralGroup,
    elements: Vec<GroupElement>,
    generators: Vec<GroupElement>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    /// Smallest subgroup containing `generators`, by breadth-first closure
    /// under multiplication. An empty list yields the trivial subgroup.
    pub fn closure(parent: DihedralGroup, generators: &[GroupElement]) -> Self {
        let mut set = BTreeSet::new();
        set.insert(parent.identity());
        let mut frontier: Vec<GroupElement> = vec![parent.identity()];
        while let Some(g) = frontier.pop() {
            for &h in generators {
                let p = parent.multiply(g, h);
                if set.insert(p) {
                    frontier.push(p);
                }
            }
        }
        Subgroup {
            parent,
            elements: set.into_iter().collect(),
            generators: generators.to_vec(),
        }
    }

    pub fn trivial(parent: DihedralGroup) -> Self {
        Self::closure(parent, &[])
    }

    pub fn whole(parent: DihedralGroup) -> Self {
        Self::closure(parent, &[parent.rotation(1), parent.reflection(0)])
    }

    /// The order-2 subgroup {(0,0), (k0,1)}.
    pub fn reflection(parent: DihedralGroup, k0: i64) -> Self {
        Self::closure(parent, &[parent.reflection(k0)])
    }

    /// Builds a subgroup from an explicit element set, verifying closure
    /// under multiplication and the presence of the identity.
    pub fn from_elements(parent: DihedralGroup, elements: &[GroupElement]) -> Result<Self> {
        let set: BTreeSet<GroupElement> = elements.iter().copied().collect();
        if !set.contains(&parent.identity()) {
            return Err(Error::NotClosed);
        }
        for &g in &set {
            for &h in &set {
                if !set.contains(&parent.multiply(g, h)) {
                    return Err(Error::NotClosed);
                }
            }
        }
        let elements: Vec<GroupElement> = set.into_iter().collect();
        Ok(Subgroup {
            parent,
            generators: elements.clone(),
            elements,
        })
    }

    #[cfg(test)]
    pub(crate) fn from_elements_unchecked(
        parent: DihedralGroup,
        elements: Vec<GroupElement>,
    ) -> Self {
        Subgroup {
            parent,
            generators: elements.clone(),
            elements,
        }
    }

    pub fn parent(&self) -> DihedralGroup {
        self.parent
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// True when every member is a rotation (a subgroup of Z_N x {0}).
    pub fn is_rotation_only(&self) -> bool {
        self.elements.iter().all(|g| g.is_rotation())
    }

    /// Canonical representative of the left coset gH: the minimum of gH in
    /// (b, a)-lexicographic order. Two elements get the same representative
    /// exactly when they lie in the same left coset.
    pub fn coset_representative(&self, g: GroupElement) -> GroupElement {
        self.elements
            .iter()
            .map(|&h| self.parent.multiply(g, h))
            .min()
            .expect("subgroup contains the identity")
    }

    /// Compact display string for reports: "e" for the trivial subgroup,
    /// otherwise the generator list joined with '+'.
    pub fn describe(&self) -> String {
        let gens: Vec<&GroupElement> = self.generators.iter().filter(|g| !g.is_identity()).collect();
        if gens.is_empty() {
            "e".to_string()
        } else {
            gens.iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join("+")
        }
    }
}

/// The order-2 subgroup {(0,0), (k0,1)} generated by a single reflection.
/// (k0,1) squares to the identity for every k0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ReflectionSubgroup {
    k0: u64,
}

impl ReflectionSubgroup {
    pub fn new(group: DihedralGroup, k0: i64) -> Self {
        Self {
            k0: group.element(k0, 1).a(),
        }
    }

    pub fn k0(self) -> u64 {
        self.k0
    }

    pub fn generator(self, group: DihedralGroup) -> GroupElement {
        group.reflection(self.k0 as i64)
    }

    pub fn subgroup(self, group: DihedralGroup) -> Subgroup {
        Subgroup::reflection(group, self.k0 as i64)
    }
}

/// All subgroups of order exactly 2: the N reflection subgroups, plus
/// {(0,0),(N/2,0)} when N is even. Count is N+1 for even N, N for odd N.
pub fn enumerate_order_two_subgroups(group: DihedralGroup) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = (0..group.n())
        .map(|k| Subgroup::reflection(group, k as i64))
        .collect();
    if group.n().is_multiple_of(2) {
        out.push(Subgroup::closure(group, &[group.rotation(group.n() as i64 / 2)]));
    }
    out
}
