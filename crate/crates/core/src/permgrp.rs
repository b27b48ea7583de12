//! Permutation groups with a deterministic Schreier-Sims stabilizer chain.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;

/// Default cap on chain-traversal nodes for element searches.
pub const DEFAULT_ELEMENT_BUDGET: u64 = 10_000_000;

/// A bijection of `0..n`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(n));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!({
            let mut v = images.clone();
            v.sort_unstable();
            v.iter().enumerate().all(|(i, &x)| i as u32 == x)
        });
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    /// The cycle `(points[0] points[1] ...)` on `0..n`.
    pub fn cycle(n: usize, points: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for (i, &x) in points.iter().enumerate() {
            if x >= n {
                return Err(Error::NotAPermutation(n));
            }
            images[x] = points[(i + 1) % points.len()];
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `x -> other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|&(i, &x)| i as u32 != x).map(|(i, _)| i)
    }

    /// Cycle lengths, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// Whether this is a single cycle through all points.
    pub fn is_full_cycle(&self) -> bool {
        let n = self.degree();
        let mut x = 0;
        for step in 1..=n {
            x = self.apply(x);
            if x == 0 {
                return step == n;
            }
        }
        false
    }
}

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    orbit: Vec<usize>,
    /// `transversal[b]` maps `point` to `b`.
    transversal: Vec<Option<Permutation>>,
    checked: HashSet<(usize, usize)>,
}

impl Level {
    fn new(n: usize, point: usize) -> Self {
        let mut transversal = vec![None; n];
        transversal[point] = Some(Permutation::identity(n));
        Level {
            point,
            orbit: vec![point],
            transversal,
            checked: HashSet::new(),
        }
    }
}

/// A permutation group given by generators, with a stabilizer chain built
/// by deterministic Schreier-Sims (base: requested prefix, then smallest
/// moved points).
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
    order: BigUint,
}

impl PermGroup {
    pub fn from_generators(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_base(degree, generators, &[])
    }

    /// Builds the chain with `base_prefix` as the first base points.
    pub fn with_base(degree: usize, generators: Vec<Permutation>, base_prefix: &[usize]) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        if let Some(&b) = base_prefix.iter().find(|&&b| b >= degree) {
            return Err(Error::InvalidArgument(format!("base point {b} out of range")));
        }
        let mut grp = PermGroup {
            degree,
            generators,
            strong: Vec::new(),
            levels: base_prefix.iter().map(|&b| Level::new(degree, b)).collect(),
            order: BigUint::from(1u32),
        };
        grp.schreier_sims();
        Ok(grp)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_generators(degree, Vec::new()).expect("trivial group")
    }

    /// `Sym(n)`.
    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::cycle(degree, &[0, 1]).unwrap());
            gens.push(Permutation::cycle(degree, &(0..degree).collect::<Vec<_>>()).unwrap());
        }
        Self::from_generators(degree, gens).unwrap()
    }

    fn fixes_prefix(&self, g: &Permutation, upto: usize) -> bool {
        self.levels[..upto].iter().all(|l| g.apply(l.point) == l.point)
    }

    fn recompute_orbit(&mut self, l: usize) {
        let gens: Vec<usize> = (0..self.strong.len())
            .filter(|&s| self.fixes_prefix(&self.strong[s], l))
            .collect();
        let level = &mut self.levels[l];
        let mut i = 0;
        while i < level.orbit.len() {
            let b = level.orbit[i];
            for &s in &gens {
                let c = self.strong[s].apply(b);
                if level.transversal[c].is_none() {
                    let u = level.transversal[b].as_ref().unwrap().then(&self.strong[s]);
                    level.transversal[c] = Some(u);
                    level.orbit.push(c);
                }
            }
            i += 1;
        }
    }

    /// Sifts `g` starting at level `from`; returns the residue and the level
    /// at which sifting stopped (`levels.len()` if it passed every level).
    fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let b = h.apply(level.point);
            match &level.transversal[b] {
                Some(u) => h = h.then(&u.inverse()),
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    fn schreier_sims(&mut self) {
        let n = self.degree;
        let mut gens: Vec<Permutation> = Vec::new();
        for g in &self.generators {
            if !g.is_identity() && !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        for g in &gens {
            if self.levels.iter().all(|l| g.apply(l.point) == l.point) {
                let b = g.first_moved_point().unwrap();
                self.levels.push(Level::new(n, b));
            }
        }
        self.strong = gens;
        for l in (0..self.levels.len()).rev() {
            self.recompute_orbit(l);
        }
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let l = i as usize;
            let gens: Vec<usize> = (0..self.strong.len())
                .filter(|&s| self.fixes_prefix(&self.strong[s], l))
                .collect();
            let mut pos = 0;
            while pos < self.levels[l].orbit.len() {
                let b = self.levels[l].orbit[pos];
                for &s in &gens {
                    if !self.levels[l].checked.insert((b, s)) {
                        continue;
                    }
                    let level = &self.levels[l];
                    let sg = &self.strong[s];
                    let c = sg.apply(b);
                    let h = level.transversal[b]
                        .as_ref()
                        .unwrap()
                        .then(sg)
                        .then(&level.transversal[c].as_ref().unwrap().inverse());
                    let (r, j) = self.sift(&h, l + 1);
                    if !r.is_identity() {
                        if j == self.levels.len() {
                            let pt = r.first_moved_point().unwrap();
                            self.levels.push(Level::new(n, pt));
                        }
                        self.strong.push(r);
                        for m in l + 1..=j {
                            self.recompute_orbit(m);
                        }
                        i = j as isize;
                        continue 'outer;
                    }
                }
                pos += 1;
            }
            i -= 1;
        }
        // drop trailing levels with trivial orbit
        while self.levels.last().is_some_and(|l| l.orbit.len() == 1) {
            self.levels.pop();
        }
        self.order = self
            .levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()));
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Strong generators of the chain (generators plus sifted residues).
    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    /// Lengths of the fundamental orbits along the chain.
    pub fn fundamental_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (r, j) = self.sift(g, 0);
        j == self.levels.len() && r.is_identity()
    }

    /// Orbits on `0..n`, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.degree;
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(comp: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while comp[r] != r {
                r = comp[r];
            }
            let mut y = x;
            while comp[y] != r {
                let next = comp[y];
                comp[y] = r;
                y = next;
            }
            r
        }
        for g in &self.generators {
            for x in 0..n {
                let (a, b) = (find(&mut comp, x), find(&mut comp, g.apply(x)));
                if a != b {
                    comp[a.max(b)] = a.min(b);
                }
            }
        }
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; n];
        for x in 0..n {
            let r = find(&mut comp, x);
            if index[r] == usize::MAX {
                index[r] = orbits.len();
                orbits.push(Vec::new());
            }
            orbits[index[r]].push(x);
        }
        orbits
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        self.orbits().into_iter().find(|o| o.contains(&x)).unwrap_or_default()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    /// The stabilizer of `x`, with its own chain.
    pub fn point_stabilizer(&self, x: usize) -> PermGroup {
        let rebased = PermGroup::with_base(self.degree, self.strong.clone(), &[x]).expect("valid");
        let gens: Vec<Permutation> = rebased
            .strong
            .iter()
            .filter(|g| g.apply(x) == x)
            .cloned()
            .collect();
        PermGroup::from_generators(self.degree, gens).expect("valid")
    }

    /// The `index`-th element in chain (mixed-radix) order, if in range.
    pub fn element(&self, mut index: u128) -> Option<Permutation> {
        let mut g = Permutation::identity(self.degree);
        for level in &self.levels {
            let m = level.orbit.len() as u128;
            let b = level.orbit[(index % m) as usize];
            index /= m;
            // g = g o u_b (apply u_b first)
            g = level.transversal[b].as_ref().unwrap().then(&g);
        }
        (index == 0).then_some(g)
    }

    /// Every element, in chain order. Each element is produced exactly once.
    pub fn elements(&self) -> impl Iterator<Item = Permutation> + '_ {
        (0u128..).map_while(move |i| self.element(i))
    }

    /// Whether the group contains a full `n`-cycle (equivalently a regular
    /// cyclic subgroup of order `n`), by depth-first traversal of the chain.
    ///
    /// At depth `j` the candidates form a coset `P K_j`, where `K_j` fixes
    /// the first `j` base points. If `P` maps some proper union of
    /// `K_j`-orbits onto itself, every element of the coset does too, and
    /// the coset holds no full cycle.
    pub fn contains_regular_cyclic(&self, n: usize, budget: u64) -> RegularCyclic {
        if n != self.degree {
            return RegularCyclic::Absent;
        }
        if n == 1 {
            return RegularCyclic::Found(Permutation::identity(1));
        }
        let orbit_ids = (0..=self.levels.len())
            .map(|j| {
                let gens: Vec<Permutation> = self
                    .strong
                    .iter()
                    .filter(|g| self.fixes_prefix(g, j))
                    .cloned()
                    .collect();
                let mut ids = vec![usize::MAX; n];
                let mut next = 0;
                for x in 0..n {
                    if ids[x] != usize::MAX {
                        continue;
                    }
                    ids[x] = next;
                    let mut stack = vec![x];
                    while let Some(y) = stack.pop() {
                        for g in &gens {
                            let z = g.apply(y);
                            if ids[z] == usize::MAX {
                                ids[z] = next;
                                stack.push(z);
                            }
                        }
                    }
                    next += 1;
                }
                ids
            })
            .collect();
        let mut search = CycleSearch {
            grp: self,
            orbit_ids,
            nodes: 0,
            budget,
        };
        match search.dfs(0, Permutation::identity(n)) {
            Ok(Some(g)) => RegularCyclic::Found(g),
            Ok(None) => RegularCyclic::Absent,
            Err(()) => RegularCyclic::Unknown { nodes: search.nodes },
        }
    }
}

/// Outcome of [`PermGroup::contains_regular_cyclic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularCyclic {
    Found(Permutation),
    Absent,
    Unknown { nodes: u64 },
}

struct CycleSearch<'a> {
    grp: &'a PermGroup,
    /// `orbit_ids[j][x]`: index of the `K_j`-orbit of `x`.
    orbit_ids: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
}

impl CycleSearch<'_> {
    /// Whether `prefix` joins all `K_level`-orbits into a single invariant union.
    fn connected(&self, level: usize, prefix: &Permutation) -> bool {
        let ids = &self.orbit_ids[level];
        let m = ids.iter().copied().max().unwrap() + 1;
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = m;
        for x in 0..ids.len() {
            let (a, b) = (find(&mut parent, ids[x]), find(&mut parent, ids[prefix.apply(x)]));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        components == 1
    }

    /// `prefix` is `u_0 o u_1 o ... o u_{level-1}`; any completion is
    /// `prefix o h` with `h` fixing the first `level` base points.
    fn dfs(&mut self, level: usize, prefix: Permutation) -> Result<Option<Permutation>, ()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(());
        }
        if !self.connected(level, &prefix) {
            return Ok(None);
        }
        if level == self.grp.levels.len() {
            debug_assert!(prefix.is_full_cycle());
            return Ok(Some(prefix));
        }
        let lv = &self.grp.levels[level];
        for &b in &lv.orbit {
            let next = lv.transversal[b].as_ref().unwrap().then(&prefix);
            if let Some(found) = self.dfs(level + 1, next)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
}

/// `G_r`: the right translations `x -> x*g` of `g`.
pub fn right_regular_representation(g: &FiniteGroup) -> PermGroup {
    let gens = g.generators().iter().map(|&s| g.right_multiplication(s)).collect();
    PermGroup::from_generators(g.order(), gens).expect("right translations are permutations")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_cyclic, make_dihedral};
    use proptest::prelude::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn trivial_and_cyclic() {
        let t = PermGroup::from_generators(5, vec![]).unwrap();
        assert_eq!(*t.order(), big(1));
        let c = PermGroup::from_generators(7, vec![Permutation::cycle(7, &[0, 1, 2, 3, 4, 5, 6]).unwrap()]).unwrap();
        assert_eq!(*c.order(), big(7));
    }

    #[test]
    fn dihedral_action_order() {
        for n in [3usize, 5, 8, 12] {
            let rot = Permutation::cycle(n, &(0..n).collect::<Vec<_>>()).unwrap();
            let refl = Permutation::new((0..n).map(|i| (n - i) % n).collect()).unwrap();
            let g = PermGroup::from_generators(n, vec![rot, refl]).unwrap();
            assert_eq!(*g.order(), big(2 * n as u64));
        }
    }

    #[test]
    fn symmetric_orders() {
        assert_eq!(*PermGroup::symmetric(5).order(), big(120));
        let s26 = PermGroup::symmetric(26);
        let fact: BigUint = (1..=26u32).map(BigUint::from).product();
        assert_eq!(*s26.order(), fact);
    }

    #[test]
    fn regular_representations() {
        let c3 = make_cyclic(3).unwrap();
        let r = right_regular_representation(&c3);
        assert_eq!(*r.order(), big(3));
        for g in r.elements().filter(|g| !g.is_identity()) {
            assert!((0..3).all(|x| g.apply(x) != x));
        }
        let d26 = make_dihedral(13).unwrap();
        let r = right_regular_representation(&d26);
        assert_eq!(*r.order(), big(26));
        assert!(r.is_transitive());
        assert_eq!(r.elements().count(), 26);
        let c1 = make_cyclic(1).unwrap();
        assert_eq!(*right_regular_representation(&c1).order(), big(1));
    }

    #[test]
    fn orbits_and_stabilizers() {
        let d26 = make_dihedral(13).unwrap();
        let r = right_regular_representation(&d26);
        assert_eq!(*r.point_stabilizer(0).order(), big(1));
        assert_eq!(PermGroup::symmetric(6).orbits().len(), 1);
        // <x -> 3x> on Z_13
        let s3 = Permutation::new((0..13).map(|x| 3 * x % 13).collect()).unwrap();
        let k = PermGroup::from_generators(13, vec![s3]).unwrap();
        let mut sizes: Vec<usize> = k.orbits().iter().map(|o| o.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 3, 3, 3]);
    }

    #[test]
    fn regular_cyclic_detection() {
        let c10 = make_cyclic(10).unwrap();
        let r = right_regular_representation(&c10);
        assert!(matches!(r.contains_regular_cyclic(10, DEFAULT_ELEMENT_BUDGET), RegularCyclic::Found(_)));
        for p in [3usize, 5, 7, 13] {
            let d = make_dihedral(p).unwrap();
            let r = right_regular_representation(&d);
            assert_eq!(r.contains_regular_cyclic(2 * p, DEFAULT_ELEMENT_BUDGET), RegularCyclic::Absent);
        }
        let t = PermGroup::trivial(1);
        assert!(matches!(t.contains_regular_cyclic(1, 10), RegularCyclic::Found(_)));
        match PermGroup::symmetric(26).contains_regular_cyclic(26, DEFAULT_ELEMENT_BUDGET) {
            RegularCyclic::Found(g) => assert!(g.is_full_cycle()),
            other => panic!("{other:?}"),
        }
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn orbit_stabilizer(gens in proptest::collection::vec(arb_perm(9), 0..3), x in 0usize..9) {
            let g = PermGroup::from_generators(9, gens).unwrap();
            let stab = g.point_stabilizer(x);
            let orbit = g.orbit(x).len();
            prop_assert_eq!(stab.order() * BigUint::from(orbit), g.order().clone());
            let total: usize = g.orbits().iter().map(|o| o.len()).sum();
            prop_assert_eq!(total, 9);
        }

        #[test]
        fn sifting_recognizes_products(gens in proptest::collection::vec(arb_perm(8), 1..3),
                                       word in proptest::collection::vec(0usize..3, 0..12),
                                       outsider in arb_perm(8)) {
            let g = PermGroup::from_generators(8, gens.clone()).unwrap();
            let mut p = Permutation::identity(8);
            for w in word {
                p = p.then(&gens[w % gens.len()]);
            }
            prop_assert!(g.contains(&p));
            // membership agrees with brute-force closure for small groups
            if *g.order() <= BigUint::from(5000u32) {
                let all: HashSet<Permutation> = g.elements().collect();
                prop_assert_eq!(BigUint::from(all.len()), g.order().clone());
                prop_assert_eq!(all.contains(&outsider), g.contains(&outsider));
            }
        }
    }
}
