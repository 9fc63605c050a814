//! Finite permutation groups, subgroups, cosets, double cosets, and finite
//! right G-sets.
//!
//! Groups are stored with explicit element lists (breadth-first from the
//! identity, generators in the given order), which keeps every construction
//! deterministic: the same generators always produce the same element order,
//! so coset representatives, reports, and golden files are reproducible.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default cap on the number of elements `close_generators` will enumerate.
pub const DEFAULT_GROUP_CAP: usize = 5040;

/// A permutation of `{0, .., degree-1}` as an image vector.
pub type Perm = Vec<usize>;

pub fn perm_identity(degree: usize) -> Perm {
    (0..degree).collect()
}

/// `a` then `b`: the product convention making `x . g = g(x)` a right action.
pub fn perm_compose(a: &Perm, b: &Perm) -> Perm {
    a.iter().map(|&x| b[x]).collect()
}

pub fn perm_inverse(a: &Perm) -> Perm {
    let mut r = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        r[x] = i;
    }
    r
}

fn is_permutation(v: &[usize], degree: usize) -> bool {
    if v.len() != degree {
        return false;
    }
    let mut seen = vec![false; degree];
    for &x in v {
        if x >= degree || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Parses cycle notation such as `(0 1)(2 3)` into an image vector.
pub fn perm_from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
    let mut p = perm_identity(degree);
    for cycle in cycles {
        for &x in cycle {
            if x >= degree {
                return Err(Error::NotAPermutation(cycle.clone(), degree));
            }
        }
        for i in 0..cycle.len() {
            p[cycle[i]] = cycle[(i + 1) % cycle.len()];
        }
    }
    if !is_permutation(&p, degree) {
        return Err(Error::NotAPermutation(p, degree));
    }
    Ok(p)
}

/// Renders a permutation in cycle notation, e.g. `(0 1)(2 4 3)`; identity
/// prints as `()`.
pub fn perm_to_cycles_string(p: &Perm) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        out.push('(');
        out.push_str(
            &cycle
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// A finite permutation group with a full element list.
///
/// `provenance[e]` records how element `e` was first reached during the
/// closure: as `elements[parent] * generators[gen]`. This lets modules and
/// actions defined on generators extend deterministically to every element.
#[derive(Debug)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    generators: Vec<usize>,
    provenance: Vec<Option<(usize, usize)>>,
    inverses: Vec<usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}
impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Breadth-first closure of a generating set of permutations.
    pub fn close_generators(gens: &[Perm], degree: usize, cap: usize) -> Result<Arc<Self>> {
        for g in gens {
            if !is_permutation(g, degree) {
                return Err(Error::NotAPermutation(g.clone(), degree));
            }
        }
        let id = perm_identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0usize);
        let mut provenance: Vec<Option<(usize, usize)>> = vec![None];
        let mut w = 0;
        while w < elements.len() {
            for (s, gen) in gens.iter().enumerate() {
                let prod = perm_compose(&elements[w], gen);
                if !index.contains_key(&prod) {
                    if elements.len() >= cap {
                        return Err(Error::GroupTooLarge(cap));
                    }
                    index.insert(prod.clone(), elements.len());
                    provenance.push(Some((w, s)));
                    elements.push(prod);
                }
            }
            w += 1;
        }
        let generators = gens
            .iter()
            .map(|g| *index.get(g).expect("generators are in the closure"))
            .collect();
        let inverses = elements
            .iter()
            .map(|e| index[&perm_inverse(e)])
            .collect();
        Ok(Arc::new(FiniteGroup {
            degree,
            elements,
            index,
            generators,
            provenance,
            inverses,
        }))
    }

    /// The one-element group on one point; carrier for plain `R`-modules.
    pub fn trivial() -> Arc<Self> {
        FiniteGroup::close_generators(&[], 1, DEFAULT_GROUP_CAP).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element_index(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Indices of the designated generators.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&perm_compose(&self.elements[a], &self.elements[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        // g^-1 x g
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn provenance(&self, e: usize) -> Option<(usize, usize)> {
        self.provenance[e]
    }

    /// Extends a per-generator assignment to all elements along the closure
    /// order: `f(identity) = unit`, `f(parent * gen) = combine(f(parent), gen)`.
    pub fn extend_over_elements<T, FU, FC>(&self, unit: FU, combine: FC) -> Vec<T>
    where
        FU: FnOnce() -> T,
        FC: Fn(&T, usize) -> T,
    {
        let mut out: Vec<T> = Vec::with_capacity(self.order());
        out.push(unit());
        for e in 1..self.order() {
            let (parent, gen) = self.provenance[e].expect("non-identity has provenance");
            let val = combine(&out[parent], gen);
            out.push(val);
        }
        out
    }
}

/// A subgroup given by its member indices inside a parent group, together
/// with a standalone copy of itself as a `FiniteGroup` (so that modules over
/// the subgroup are ordinary modules).
#[derive(Debug, Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
    gens: Vec<usize>,
    group: Arc<FiniteGroup>,
    to_sub: HashMap<usize, usize>,
    to_parent: Vec<usize>,
}

impl Subgroup {
    pub fn from_generators(parent: &Arc<FiniteGroup>, gen_indices: &[usize]) -> Result<Self> {
        for &g in gen_indices {
            if g >= parent.order() {
                return Err(Error::NotASubgroup(format!(
                    "generator index {} out of range",
                    g
                )));
            }
        }
        let mut members = vec![parent.identity()];
        let mut seen = vec![false; parent.order()];
        seen[parent.identity()] = true;
        let mut w = 0;
        while w < members.len() {
            for &s in gen_indices {
                let prod = parent.mul(members[w], s);
                if !seen[prod] {
                    seen[prod] = true;
                    members.push(prod);
                }
            }
            w += 1;
        }
        members.sort_unstable();
        Subgroup::build(parent.clone(), members, gen_indices.to_vec())
    }

    /// Builds a subgroup from an explicit member list, checking closure and
    /// deriving a deterministic generator list greedily.
    pub fn from_members(parent: &Arc<FiniteGroup>, member_indices: &[usize]) -> Result<Self> {
        let mut members: Vec<usize> = member_indices.to_vec();
        members.sort_unstable();
        members.dedup();
        if !members.contains(&parent.identity()) {
            return Err(Error::NotASubgroup("missing identity".into()));
        }
        let mut in_set = vec![false; parent.order()];
        for &m in &members {
            if m >= parent.order() {
                return Err(Error::NotASubgroup(format!("index {} out of range", m)));
            }
            in_set[m] = true;
        }
        for &a in &members {
            if !in_set[parent.inv(a)] {
                return Err(Error::NotASubgroup("not closed under inverses".into()));
            }
            for &b in &members {
                if !in_set[parent.mul(a, b)] {
                    return Err(Error::NotASubgroup("not closed under products".into()));
                }
            }
        }
        // greedy deterministic generators: scan members in order, add any
        // element not yet generated
        let mut gens: Vec<usize> = Vec::new();
        let mut closure = vec![false; parent.order()];
        closure[parent.identity()] = true;
        for &m in &members {
            if closure[m] {
                continue;
            }
            gens.push(m);
            let mut list = vec![parent.identity()];
            let mut cl = vec![false; parent.order()];
            cl[parent.identity()] = true;
            let mut w = 0;
            while w < list.len() {
                for &s in &gens {
                    let prod = parent.mul(list[w], s);
                    if !cl[prod] {
                        cl[prod] = true;
                        list.push(prod);
                    }
                }
                w += 1;
            }
            closure = cl;
        }
        Subgroup::build(parent.clone(), members, gens)
    }

    /// The whole group as a subgroup of itself, generated by the parent's
    /// designated generators.
    pub fn full(parent: &Arc<FiniteGroup>) -> Self {
        Subgroup::from_generators(parent, &parent.generator_indices().to_vec())
            .expect("whole group is a subgroup")
    }

    pub fn trivial_subgroup(parent: &Arc<FiniteGroup>) -> Self {
        Subgroup::from_generators(parent, &[]).expect("trivial subgroup")
    }

    fn build(parent: Arc<FiniteGroup>, members: Vec<usize>, gens: Vec<usize>) -> Result<Self> {
        let gen_perms: Vec<Perm> = gens.iter().map(|&g| parent.element(g).clone()).collect();
        let group =
            FiniteGroup::close_generators(&gen_perms, parent.degree(), parent.order() + 1)?;
        if group.order() != members.len() {
            return Err(Error::NotASubgroup(
                "generators do not generate the member set".into(),
            ));
        }
        let mut to_sub = HashMap::new();
        let mut to_parent = vec![0usize; group.order()];
        for (si, perm) in group.elements().iter().enumerate() {
            let pi = parent
                .element_index(perm)
                .ok_or_else(|| Error::NotASubgroup("element not in parent".into()))?;
            to_sub.insert(pi, si);
            to_parent[si] = pi;
        }
        Ok(Subgroup {
            parent,
            members,
            gens,
            group,
            to_sub,
            to_parent,
        })
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    /// Member element indices in the parent, sorted.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, parent_index: usize) -> bool {
        self.to_sub.contains_key(&parent_index)
    }

    /// Generator element indices in the parent.
    pub fn generator_indices(&self) -> &[usize] {
        &self.gens
    }

    /// The subgroup as a standalone group; its element order is the
    /// breadth-first closure of the derived generators.
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Parent element index -> standalone index.
    pub fn to_sub(&self, parent_index: usize) -> Option<usize> {
        self.to_sub.get(&parent_index).copied()
    }

    /// Standalone index -> parent element index.
    pub fn to_parent(&self, sub_index: usize) -> usize {
        self.to_parent[sub_index]
    }

    pub fn is_full(&self) -> bool {
        self.order() == self.parent.order()
    }

    /// The conjugate subgroup `g^-1 H g`.
    pub fn conjugate(&self, g: usize) -> Result<Subgroup> {
        let members: Vec<usize> = self.members.iter().map(|&h| self.parent.conj(g, h)).collect();
        Subgroup::from_members(&self.parent, &members)
    }

    /// Intersection with another subgroup of the same parent.
    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        let members: Vec<usize> = self
            .members
            .iter()
            .copied()
            .filter(|&m| other.contains(m))
            .collect();
        Subgroup::from_members(&self.parent, &members)
    }
}

/// Deterministic right coset representatives of `H` in `G`: the least
/// element index of each coset `Hg`, listed in increasing order.
pub fn right_coset_reps(g: &Arc<FiniteGroup>, h: &Subgroup) -> Result<Vec<usize>> {
    check_subgroup_of(g, h)?;
    let mut assigned = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if assigned[x] {
            continue;
        }
        reps.push(x);
        for &m in h.members() {
            assigned[g.mul(m, x)] = true;
        }
    }
    Ok(reps)
}

/// Coset index lookup: for each group element, the position of its coset
/// `Hg` in the representative list.
pub fn right_coset_table(g: &Arc<FiniteGroup>, h: &Subgroup) -> Result<(Vec<usize>, Vec<usize>)> {
    let reps = right_coset_reps(g, h)?;
    let mut table = vec![usize::MAX; g.order()];
    for (i, &r) in reps.iter().enumerate() {
        for &m in h.members() {
            table[g.mul(m, r)] = i;
        }
    }
    Ok((reps, table))
}

fn check_subgroup_of(g: &Arc<FiniteGroup>, h: &Subgroup) -> Result<()> {
    if !Arc::ptr_eq(g, h.parent()) && **g != **h.parent() {
        return Err(Error::NotASubgroup("subgroup has a different parent".into()));
    }
    Ok(())
}

/// Double coset data `H\G/K`: representatives, full cells, and sizes.
#[derive(Debug, Clone)]
pub struct CosetDecomposition {
    pub reps: Vec<usize>,
    pub cells: Vec<Vec<usize>>,
    pub sizes: Vec<usize>,
}

impl CosetDecomposition {
    /// Index of the cell containing a given element.
    pub fn cell_of(&self, x: usize) -> Option<usize> {
        self.cells.iter().position(|c| c.binary_search(&x).is_ok())
    }
}

/// Double cosets with deterministic representatives (least unassigned
/// element index).
pub fn double_coset_reps(
    g: &Arc<FiniteGroup>,
    h: &Subgroup,
    k: &Subgroup,
) -> Result<CosetDecomposition> {
    double_coset_reps_with(g, h, k, |candidates| candidates[0])
}

/// Like `double_coset_reps` but with an injectable representative choice,
/// used by tests to confirm that downstream results do not depend on it.
pub fn double_coset_reps_with<F>(
    g: &Arc<FiniteGroup>,
    h: &Subgroup,
    k: &Subgroup,
    mut choose: F,
) -> Result<CosetDecomposition>
where
    F: FnMut(&[usize]) -> usize,
{
    check_subgroup_of(g, h)?;
    check_subgroup_of(g, k)?;
    let mut assigned = vec![false; g.order()];
    let mut reps = Vec::new();
    let mut cells = Vec::new();
    let mut remaining: Vec<usize> = (0..g.order()).collect();
    while !remaining.is_empty() {
        let rep = choose(&remaining);
        debug_assert!(!assigned[rep]);
        let mut cell = Vec::new();
        for &hm in h.members() {
            let hx = g.mul(hm, rep);
            for &km in k.members() {
                let e = g.mul(hx, km);
                if !assigned[e] {
                    assigned[e] = true;
                    cell.push(e);
                }
            }
        }
        cell.sort_unstable();
        reps.push(rep);
        cells.push(cell);
        remaining.retain(|&x| !assigned[x]);
    }
    let sizes = cells.iter().map(|c| c.len()).collect::<Vec<_>>();
    // |HgK| = |H| * |K| / |K n g^-1 H g| in every cell
    for (i, &rep) in reps.iter().enumerate() {
        let conj = h.conjugate(rep)?;
        let l = k.intersect(&conj)?;
        let expected = h.order() * k.order() / l.order();
        if expected != sizes[i] {
            return Err(Error::NotASubgroup(format!(
                "double coset size invariant failed: |HgK| = {} but formula gives {}",
                sizes[i], expected
            )));
        }
    }
    Ok(CosetDecomposition { reps, cells, sizes })
}

/// A finite right G-set: per-element permutation of the points, validated
/// exhaustively on construction.
#[derive(Debug, Clone)]
pub struct GSpace {
    group: Arc<FiniteGroup>,
    n_points: usize,
    action: Vec<Vec<usize>>,
}

impl GSpace {
    /// Builds from generator images and extends along the group closure;
    /// validates the action axioms on every (point, element, element) triple.
    pub fn from_generator_images(
        group: &Arc<FiniteGroup>,
        n_points: usize,
        gen_images: &[Vec<usize>],
    ) -> Result<Self> {
        if gen_images.len() != group.num_generators() {
            return Err(Error::InvalidAction(format!(
                "expected {} generator images, got {}",
                group.num_generators(),
                gen_images.len()
            )));
        }
        for img in gen_images {
            if !is_permutation(img, n_points) {
                return Err(Error::InvalidAction(
                    "generator image is not a permutation of the points".into(),
                ));
            }
        }
        let action = group.extend_over_elements(
            || (0..n_points).collect::<Vec<usize>>(),
            |parent, gen| parent.iter().map(|&x| gen_images[gen][x]).collect(),
        );
        let space = GSpace {
            group: group.clone(),
            n_points,
            action,
        };
        space.validate()?;
        Ok(space)
    }

    /// Builds directly from a full action table `action[element][point]`.
    pub fn from_action_table(
        group: &Arc<FiniteGroup>,
        n_points: usize,
        action: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "expected {} action rows, got {}",
                group.order(),
                action.len()
            )));
        }
        for row in &action {
            if !is_permutation(row, n_points) {
                return Err(Error::InvalidAction(
                    "element image is not a permutation of the points".into(),
                ));
            }
        }
        let space = GSpace {
            group: group.clone(),
            n_points,
            action,
        };
        space.validate()?;
        Ok(space)
    }

    fn validate(&self) -> Result<()> {
        let g = &self.group;
        if self.action[g.identity()] != (0..self.n_points).collect::<Vec<_>>() {
            return Err(Error::InvalidAction("identity does not fix the points".into()));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                for x in 0..self.n_points {
                    if self.action[ab][x] != self.action[b][self.action[a][x]] {
                        return Err(Error::InvalidAction(format!(
                            "(x.a).b != x.(ab) at x = {}, a = {}, b = {}",
                            x, a, b
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The regular action of the group on itself.
    pub fn regular(group: &Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let action = (0..n)
            .map(|g| (0..n).map(|x| group.mul(x, g)).collect())
            .collect();
        GSpace {
            group: group.clone(),
            n_points: n,
            action,
        }
    }

    /// The action on right cosets `H\G`.
    pub fn cosets(group: &Arc<FiniteGroup>, h: &Subgroup) -> Result<Self> {
        let (reps, table) = right_coset_table(group, h)?;
        let action = (0..group.order())
            .map(|g| reps.iter().map(|&r| table[group.mul(r, g)]).collect())
            .collect();
        Ok(GSpace {
            group: group.clone(),
            n_points: reps.len(),
            action,
        })
    }

    /// The trivial action on `n` points.
    pub fn trivial(group: &Arc<FiniteGroup>, n_points: usize) -> Self {
        GSpace {
            group: group.clone(),
            n_points,
            action: vec![(0..n_points).collect(); group.order()],
        }
    }

    /// Disjoint union of two actions of the same group.
    pub fn disjoint_union(&self, other: &GSpace) -> Result<GSpace> {
        if !Arc::ptr_eq(&self.group, &other.group) && *self.group != *other.group {
            return Err(Error::GroupMismatch);
        }
        let n = self.n_points + other.n_points;
        let action = (0..self.group.order())
            .map(|g| {
                let mut row: Vec<usize> = self.action[g].clone();
                row.extend(other.action[g].iter().map(|&x| x + self.n_points));
                row
            })
            .collect();
        Ok(GSpace {
            group: self.group.clone(),
            n_points: n,
            action,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn apply(&self, x: usize, g: usize) -> usize {
        self.action[g][x]
    }
}

/// One orbit of a G-set with the stabilizer of its least point.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub points: Vec<usize>,
    pub base_point: usize,
    pub stabilizer: Subgroup,
}

/// Orbit partition with stabilizers; checks `|orbit| * |stabilizer| = |G|`.
pub fn orbits(space: &GSpace) -> Result<Vec<Orbit>> {
    let g = space.group();
    let mut seen = vec![false; space.n_points()];
    let mut out = Vec::new();
    for x in 0..space.n_points() {
        if seen[x] {
            continue;
        }
        let mut points = Vec::new();
        let mut stab = Vec::new();
        for e in 0..g.order() {
            let y = space.apply(x, e);
            if !seen[y] {
                seen[y] = true;
                points.push(y);
            }
            if y == x {
                stab.push(e);
            }
        }
        points.sort_unstable();
        let stabilizer = Subgroup::from_members(g, &stab)?;
        if points.len() * stabilizer.order() != g.order() {
            return Err(Error::InvalidAction(
                "orbit-stabilizer count failed".into(),
            ));
        }
        out.push(Orbit {
            points,
            base_point: x,
            stabilizer,
        });
    }
    Ok(out)
}

/// All subgroups of a small group, by closing generating subsets of size at
/// most three (plus the whole group). Complete for the orders used here;
/// intended as a brute-force helper for sweeps and tests.
pub fn all_subgroups(g: &Arc<FiniteGroup>) -> Result<Vec<Subgroup>> {
    let n = g.order();
    let closure_members = |gens: &[usize]| -> Vec<usize> {
        let mut members = vec![g.identity()];
        let mut in_set = vec![false; n];
        in_set[g.identity()] = true;
        let mut w = 0;
        while w < members.len() {
            for &s in gens {
                let p = g.mul(members[w], s);
                if !in_set[p] {
                    in_set[p] = true;
                    members.push(p);
                }
            }
            w += 1;
        }
        members.sort_unstable();
        members
    };
    let mut candidates: Vec<Vec<usize>> = vec![vec![], g.generator_indices().to_vec()];
    for a in 0..n {
        candidates.push(vec![a]);
        for b in a + 1..n {
            candidates.push(vec![a, b]);
            for c in b + 1..n {
                candidates.push(vec![a, b, c]);
            }
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for gens in candidates {
        if seen.insert(closure_members(&gens)) {
            out.push(Subgroup::from_generators(g, &gens)?);
        }
    }
    out.sort_by(|x, y| x.members().cmp(y.members()));
    Ok(out)
}

/// Built-in groups used by the verification sweeps.
pub mod builtins {
    use super::*;

    /// Cyclic group of order `n` acting on `n` points.
    pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
        let cycle: Perm = (0..n).map(|i| (i + 1) % n).collect();
        FiniteGroup::close_generators(&[cycle], n, DEFAULT_GROUP_CAP).expect("cyclic group")
    }

    /// Klein four-group as double transpositions on 4 points.
    pub fn klein_four() -> Arc<FiniteGroup> {
        let a = perm_from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let b = perm_from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        FiniteGroup::close_generators(&[a, b], 4, DEFAULT_GROUP_CAP).expect("klein four")
    }

    /// Symmetric group on 3 points, generated by (0 1) and (0 1 2).
    pub fn sym3() -> Arc<FiniteGroup> {
        let t = perm_from_cycles(3, &[vec![0, 1]]).unwrap();
        let c = perm_from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        FiniteGroup::close_generators(&[t, c], 3, DEFAULT_GROUP_CAP).expect("sym3")
    }

    /// Dihedral group of order `2n` on `n` points (rotation and reflection).
    pub fn dihedral(n: usize) -> Arc<FiniteGroup> {
        let rot: Perm = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Perm = (0..n).map(|i| (n - i) % n).collect();
        FiniteGroup::close_generators(&[rot, refl], n, DEFAULT_GROUP_CAP).expect("dihedral")
    }

    /// Alternating group on 4 points.
    pub fn alt4() -> Arc<FiniteGroup> {
        let a = perm_from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let b = perm_from_cycles(4, &[vec![0, 1, 2]]).unwrap();
        FiniteGroup::close_generators(&[a, b], 4, DEFAULT_GROUP_CAP).expect("alt4")
    }

    /// The sweep list: named groups of order at most 12.
    pub fn sweep_groups() -> Vec<(String, Arc<FiniteGroup>)> {
        vec![
            ("C2".into(), cyclic(2)),
            ("C3".into(), cyclic(3)),
            ("C4".into(), cyclic(4)),
            ("C6".into(), cyclic(6)),
            ("V4".into(), klein_four()),
            ("S3".into(), sym3()),
            ("D4".into(), dihedral(4)),
            ("D5".into(), dihedral(5)),
            ("D6".into(), dihedral(6)),
            ("A4".into(), alt4()),
        ]
    }
}
