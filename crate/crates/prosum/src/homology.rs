//! Projectivity tests, syzygies, bounded projective dimension, Tor and Ext
//! over group algebras with field coefficients.
//!
//! Projectivity is decided by solving for a section of the counit
//! epimorphism `M (x)_R R[G] -> M`, `m (x) g -> m.g`. A module map into the
//! induced module `M (x)_R R[G]` is the same thing as a plain linear
//! endomorphism of `M` (send `m` to `sum_g sigma(m g^-1) (x) g`), so the
//! section equations collapse to the single affine system
//! `sum_g rho(g^-1) S rho(g) = I` in `dim(M)^2` unknowns. A solution is
//! re-expanded into the explicit counit section, which witnesses `M` as a
//! direct summand of a free module.
//!
//! These operations require `k = 1`: over `Z/p^k` with `k >= 2` the group
//! algebra has infinite global dimension and bounded projective-dimension
//! computations would be meaningless.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::mat::{field_rank, Mat, RowSolver};
use crate::module::{balanced_tensor, hom_basis, Bimodule, GModule, ModuleHom};

fn require_field(m: &GModule) -> Result<()> {
    if !m.ring().is_field() {
        return Err(Error::UnsupportedRing(m.ring().k()));
    }
    Ok(())
}

/// Projectivity verdict with an explicit witness: a module-map section of
/// the counit epimorphism from the free module `M (x)_R R[G]`.
#[derive(Debug, Clone)]
pub struct Projectivity {
    pub is_projective: bool,
    /// `M -> M (x)_R R[G]`, satisfying `section * counit = id`.
    pub section: Option<ModuleHom>,
}

/// Counit matrix of the free module on the rows `gens`: row `(i, g)` is
/// `gens[i] * rho(g)`.
fn cover_matrix(m: &GModule, gens: &[Vec<u64>]) -> Mat {
    let ring = m.ring();
    let order = m.group().order();
    let mut e = Mat::zero(ring, gens.len() * order, m.dim());
    for (i, gen) in gens.iter().enumerate() {
        for g in 0..order {
            let rho = m.element_action(g);
            for col in 0..m.dim() {
                let mut acc = 0u64;
                for (a, &ga) in gen.iter().enumerate() {
                    if ga != 0 {
                        acc = ring.add(acc, ring.mul(ga, rho.get(a, col)));
                    }
                }
                e.set(i * order + g, col, acc);
            }
        }
    }
    e
}

pub fn is_projective(m: &GModule) -> Result<Projectivity> {
    require_field(m)?;
    let ring = m.ring();
    let d = m.dim();
    let group = m.group().clone();
    let order = group.order();
    if d == 0 {
        let free = Arc::new(GModule::zero(ring, &group));
        let section = ModuleHom::new(Arc::new(m.clone()), free, Mat::zero(ring, 0, 0))?;
        return Ok(Projectivity {
            is_projective: true,
            section: Some(section),
        });
    }
    // coefficient matrix of S -> sum_g rho(g^-1) S rho(g), unknowns vec(S)
    let unknowns = d * d;
    let mut a = Mat::zero(ring, unknowns, unknowns);
    for g in 0..order {
        let rho = m.element_action(g);
        let rho_inv = m.element_action(group.inv(g));
        for i in 0..d {
            for l in 0..d {
                let coeff = rho_inv.get(i, l);
                if coeff == 0 {
                    continue;
                }
                for c in 0..d {
                    for j in 0..d {
                        let v = ring.mul(coeff, rho.get(c, j));
                        if v != 0 {
                            let row = l * d + c;
                            let col = i * d + j;
                            a.set(row, col, ring.add(a.get(row, col), v));
                        }
                    }
                }
            }
        }
    }
    let mut rhs = vec![0u64; unknowns];
    for i in 0..d {
        rhs[i * d + i] = 1;
    }
    let Some(x) = RowSolver::new(&a).solve(&rhs) else {
        return Ok(Projectivity {
            is_projective: false,
            section: None,
        });
    };
    let mut sigma = Mat::zero(ring, d, d);
    for l in 0..d {
        for c in 0..d {
            sigma.set(l, c, x[l * d + c]);
        }
    }
    // expand sigma into the counit section s(m) = sum_g sigma(m g^-1) (x) g
    let mut s = Mat::zero(ring, d, d * order);
    for g in 0..order {
        let block = m.element_action(group.inv(g)).mul(&sigma)?;
        for row in 0..d {
            for a_col in 0..d {
                s.set(row, a_col * order + g, block.get(row, a_col));
            }
        }
    }
    let free = Arc::new(GModule::free(ring, &group, d));
    let full_basis: Vec<Vec<u64>> = Mat::identity(ring, d).to_rows();
    let counit = cover_matrix(m, &full_basis);
    let composite = s.mul(&counit)?;
    if !composite.is_identity() {
        return Err(Error::InvalidModule(
            "counit section equation failed after expansion".into(),
        ));
    }
    let section = ModuleHom::new(Arc::new(m.clone()), free, s)?;
    Ok(Projectivity {
        is_projective: true,
        section: Some(section),
    })
}

/// A free cover of a module and its kernel with the induced action.
#[derive(Debug, Clone)]
pub struct FreeCover {
    /// Module generators found greedily over the basis vectors.
    pub generators: Vec<Vec<u64>>,
    pub free: Arc<GModule>,
    /// Free module -> M; row `(i, g)` maps to `generators[i] . g`.
    pub cover: ModuleHom,
    /// The kernel of the cover as a module in its own right.
    pub kernel: Arc<GModule>,
    /// Kernel -> free module, rows are the kernel basis.
    pub inclusion: ModuleHom,
}

/// Greedy module generating set: scan the basis vectors in order, keep those
/// not already in the submodule generated so far. Inclusion-minimal and
/// deterministic; any generating set yields a valid cover, and changing the
/// cover changes syzygies only by projective summands.
pub fn module_generators(m: &GModule) -> Vec<Vec<u64>> {
    let ring = m.ring();
    let d = m.dim();
    let order = m.group().order();
    let mut gens: Vec<Vec<u64>> = Vec::new();
    let mut span_rows: Vec<Vec<u64>> = Vec::new();
    let mut solver: Option<RowSolver> = None;
    for i in 0..d {
        let mut e = vec![0u64; d];
        e[i] = 1;
        let known = solver.as_ref().is_some_and(|s| s.solve(&e).is_some());
        if known {
            continue;
        }
        for g in 0..order {
            span_rows.push(m.element_action(g).row_vec(i));
        }
        gens.push(e);
        solver = Some(RowSolver::new(
            &Mat::from_rows(ring, span_rows.clone()).expect("rectangular span rows"),
        ));
    }
    gens
}

pub fn free_cover(m: &GModule) -> Result<FreeCover> {
    require_field(m)?;
    let ring = m.ring();
    let group = m.group().clone();
    let order = group.order();
    let gens = module_generators(m);
    let rank = gens.len();
    let free = Arc::new(GModule::free(ring, &group, rank));
    let cover_mat = cover_matrix(m, &gens);
    let m_arc = Arc::new(m.clone());
    let cover = ModuleHom::new(free.clone(), m_arc, cover_mat.clone())?;
    if !cover.is_surjective() {
        return Err(Error::InvalidModule("free cover is not surjective".into()));
    }
    let kernel_basis = RowSolver::new(&cover_mat).kernel();
    let kdim = kernel_basis.rows();
    debug_assert_eq!(kdim, rank * order - m.dim());
    // induced action on the kernel: express each basis row times rho through
    // the basis
    let ksolver = RowSolver::new(&kernel_basis);
    let gen_mats = (0..group.num_generators())
        .map(|s| {
            let moved = kernel_basis.mul(free.generator_action(s))?;
            ksolver
                .solve_mat(&moved)
                .ok_or_else(|| Error::InvalidModule("kernel is not action-stable".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let kernel = Arc::new(GModule::new(ring, &group, kdim, gen_mats)?);
    let inclusion = ModuleHom::new(kernel.clone(), free.clone(), kernel_basis)?;
    Ok(FreeCover {
        generators: gens,
        free,
        cover,
        kernel,
        inclusion,
    })
}

/// The kernel of a free cover of `M`, with its induced action.
pub fn syzygy(m: &GModule) -> Result<GModule> {
    if m.dim() == 0 {
        require_field(m)?;
        return Ok(GModule::zero(m.ring(), m.group()));
    }
    Ok((*free_cover(m)?.kernel).clone())
}

/// Bounded projective dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pd {
    Finite(usize),
    AboveCutoff,
}

impl std::fmt::Display for Pd {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Pd::Finite(n) => write!(f, "{}", n),
            Pd::AboveCutoff => write!(f, "ABOVE_CUTOFF"),
        }
    }
}

impl Pd {
    pub fn max(self, other: Pd) -> Pd {
        match (self, other) {
            (Pd::AboveCutoff, _) | (_, Pd::AboveCutoff) => Pd::AboveCutoff,
            (Pd::Finite(a), Pd::Finite(b)) => Pd::Finite(a.max(b)),
        }
    }
}

/// Smallest `i <= cutoff` whose `i`-th syzygy is projective, else
/// `AboveCutoff`. In particular `Finite(0)` exactly when `M` is projective.
pub fn pd_bounded(m: &GModule, cutoff: usize) -> Result<Pd> {
    require_field(m)?;
    let mut current = m.clone();
    for i in 0..=cutoff {
        if is_projective(&current)?.is_projective {
            return Ok(Pd::Finite(i));
        }
        if i < cutoff {
            current = syzygy(&current)?;
        }
    }
    Ok(Pd::AboveCutoff)
}

/// `Tor_i` of a right module against a left module (a bimodule whose right
/// group may be trivial), computed from the iterated-syzygy resolution:
/// `Tor_0` is the balanced tensor, and for `i >= 1` the short exact sequence
/// `0 -> Omega^i M -> F_{i-1} -> Omega^{i-1} M -> 0` identifies `Tor_i(M, N)`
/// with the kernel of `Omega^i M (x) N -> F_{i-1} (x) N`.
#[derive(Debug, Clone)]
pub struct TorResult {
    pub dim: usize,
    /// The module the Tor classes live in (`Omega^i M (x) N` for `i >= 1`).
    pub ambient: GModule,
    /// Basis of the Tor space inside the ambient module.
    pub basis: Mat,
}

pub fn tor_bounded(m: &GModule, n: &Bimodule, i: usize) -> Result<TorResult> {
    require_field(m)?;
    if i == 0 {
        let bt = balanced_tensor(m, n)?;
        let dim = bt.module.dim();
        let basis = Mat::identity(m.ring(), dim);
        return Ok(TorResult {
            dim,
            ambient: bt.module,
            basis,
        });
    }
    let mut x = m.clone();
    for _ in 0..i - 1 {
        x = syzygy(&x)?;
    }
    if x.dim() == 0 {
        let ring = m.ring();
        return Ok(TorResult {
            dim: 0,
            ambient: GModule::zero(ring, n.right_group()),
            basis: Mat::zero(ring, 0, 0),
        });
    }
    let cover = free_cover(&x)?;
    let bt_omega = balanced_tensor(&cover.kernel, n)?;
    let bt_free = balanced_tensor(&cover.free, n)?;
    let id_n = Mat::identity(m.ring(), n.dim());
    let plain = cover.inclusion.matrix().kron(&id_n)?;
    let induced = bt_omega.induce_map(&bt_free, &plain)?;
    let basis = RowSolver::new(&induced).kernel();
    Ok(TorResult {
        dim: basis.rows(),
        ambient: bt_omega.module,
        basis,
    })
}

/// `Ext^i(M, N)` dimension from the syzygy resolution: `Ext^0` is the
/// intertwiner count, and for `i >= 1` it is the cokernel dimension of the
/// restriction map `Hom(F_{i-1}, N) -> Hom(Omega^i M, N)`.
pub fn ext_bounded(m: &GModule, n: &GModule, i: usize) -> Result<usize> {
    require_field(m)?;
    if m.ring() != n.ring() {
        return Err(Error::RingMismatch);
    }
    if i == 0 {
        return Ok(hom_basis(m, n)?.len());
    }
    let mut x = m.clone();
    for _ in 0..i - 1 {
        x = syzygy(&x)?;
    }
    if x.dim() == 0 {
        return Ok(0);
    }
    let cover = free_cover(&x)?;
    let homs_omega = hom_basis(&cover.kernel, n)?;
    let s1 = homs_omega.len();
    if s1 == 0 {
        return Ok(0);
    }
    // Hom(free, N) has the explicit basis psi_{(copy, b)}: row (j, g) is
    // [j = copy] * rho_N(g)[b, :]; restrict each along the inclusion
    let ring = m.ring();
    let order = m.group().order();
    let rank = cover.generators.len();
    let inc = cover.inclusion.matrix();
    let mut image_rows: Vec<Vec<u64>> = Vec::new();
    for copy in 0..rank {
        for b in 0..n.dim() {
            let mut psi = Mat::zero(ring, rank * order, n.dim());
            for g in 0..order {
                let rho = n.element_action(g);
                for col in 0..n.dim() {
                    psi.set(copy * order + g, col, rho.get(b, col));
                }
            }
            let restricted = inc.mul(&psi)?;
            let mut flat = Vec::with_capacity(restricted.rows() * restricted.cols());
            for r in 0..restricted.rows() {
                flat.extend_from_slice(restricted.row(r));
            }
            image_rows.push(flat);
        }
    }
    let image = Mat::from_rows(ring, image_rows)?;
    Ok(s1 - field_rank(&image))
}

/// Direct-sum compatibility of bounded projective dimension: the pd of a
/// direct sum is the maximum of the summands' pds within the cutoff.
pub fn pd_direct_sum_max(parts: &[&GModule], cutoff: usize) -> Result<(Pd, Pd)> {
    let mut fiber_max = Pd::Finite(0);
    let mut sum: Option<GModule> = None;
    for &p in parts {
        fiber_max = fiber_max.max(pd_bounded(p, cutoff)?);
        sum = Some(match sum {
            None => p.clone(),
            Some(s) => s.direct_sum(p)?,
        });
    }
    let sum_pd = match sum {
        None => Pd::Finite(0),
        Some(s) => pd_bounded(&s, cutoff)?,
    };
    Ok((sum_pd, fiber_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtins;
    use crate::module::{induce, restrict};
    use crate::group::Subgroup;
    use crate::ring::ChainRing;

    fn f2() -> ChainRing {
        ChainRing::field(2).unwrap()
    }

    fn f3() -> ChainRing {
        ChainRing::field(3).unwrap()
    }

    #[test]
    fn regular_module_is_projective() {
        let g = builtins::cyclic(2);
        let reg = GModule::regular(f2(), &g);
        let p = is_projective(&reg).unwrap();
        assert!(p.is_projective);
        let s = p.section.unwrap();
        // double check the section really splits the counit
        assert!(s.is_injective());
    }

    #[test]
    fn trivial_module_over_f2_c2_is_not_projective() {
        let g = builtins::cyclic(2);
        let triv = GModule::trivial(f2(), &g);
        let p = is_projective(&triv).unwrap();
        assert!(!p.is_projective);
        // oracle: exhaust all 4 candidate sections of the counit
        // F_2 -> F_2[C_2]; none is both linear-over-the-group and a section
        let reg = GModule::regular(f2(), &g);
        let swap = reg.generator_action(0);
        let mut found = false;
        for a in 0..2u64 {
            for b in 0..2u64 {
                let s = Mat::from_rows(f2(), vec![vec![a, b]]).unwrap();
                let intertwines = s.mul(swap).unwrap() == s; // trivial action on source
                let counit = Mat::from_rows(f2(), vec![vec![1], vec![1]]).unwrap();
                let splits = s.mul(&counit).unwrap().is_identity();
                if intertwines && splits {
                    found = true;
                }
            }
        }
        assert!(!found);
    }

    #[test]
    fn everything_is_projective_when_group_order_is_invertible() {
        let g = builtins::cyclic(3);
        for dim in [1usize, 2] {
            let m = if dim == 1 {
                GModule::trivial(f2(), &g)
            } else {
                GModule::trivial(f2(), &g).direct_sum(&GModule::trivial(f2(), &g)).unwrap()
            };
            assert!(is_projective(&m).unwrap().is_projective);
        }
        let reg = GModule::regular(f2(), &g);
        assert!(is_projective(&reg).unwrap().is_projective);
    }

    #[test]
    fn unsupported_ring_is_rejected() {
        let g = builtins::cyclic(2);
        let z4 = ChainRing::new(2, 2).unwrap();
        let m = GModule::trivial(z4, &g);
        assert!(matches!(
            is_projective(&m),
            Err(Error::UnsupportedRing(2))
        ));
    }

    #[test]
    fn syzygy_of_trivial_over_f2_c2_is_trivial() {
        let g = builtins::cyclic(2);
        let triv = GModule::trivial(f2(), &g);
        let s = syzygy(&triv).unwrap();
        // kernel of the augmentation R[C_2] -> F_2 is spanned by 1 + g,
        // on which the group acts trivially
        assert_eq!(s.dim(), 1);
        assert_eq!(s, GModule::trivial(f2(), &g));
    }

    #[test]
    fn syzygy_of_regular_is_projective() {
        let g = builtins::sym3();
        let reg = GModule::regular(f2(), &g);
        let s = syzygy(&reg).unwrap();
        assert!(is_projective(&s).unwrap().is_projective);
    }

    #[test]
    fn syzygy_of_zero_is_zero() {
        let g = builtins::cyclic(2);
        let z = GModule::zero(f2(), &g);
        assert_eq!(syzygy(&z).unwrap().dim(), 0);
    }

    #[test]
    fn pd_examples() {
        let c2 = builtins::cyclic(2);
        let reg = GModule::regular(f2(), &c2);
        assert_eq!(pd_bounded(&reg, 3).unwrap(), Pd::Finite(0));
        let triv = GModule::trivial(f2(), &c2);
        assert_eq!(pd_bounded(&triv, 5).unwrap(), Pd::AboveCutoff);
        let c3 = builtins::cyclic(3);
        let triv3 = GModule::trivial(f2(), &c3);
        assert_eq!(pd_bounded(&triv3, 3).unwrap(), Pd::Finite(0));
    }

    #[test]
    fn restricted_regular_module_is_free_over_the_subgroup() {
        let g = builtins::sym3();
        let t = g
            .element_index(&crate::group::perm_from_cycles(3, &[vec![0, 1]]).unwrap())
            .unwrap();
        let h = Subgroup::from_generators(&g, &[t]).unwrap();
        let reg = GModule::regular(f2(), &g);
        let res = restrict(&reg, &h).unwrap();
        assert_eq!(res.dim(), 6);
        assert!(is_projective(&res).unwrap().is_projective);
    }

    #[test]
    fn tor_of_projective_vanishes() {
        let g = builtins::cyclic(2);
        let reg = GModule::regular(f2(), &g);
        let triv_left = crate::module::left_via_inverse(&GModule::trivial(f2(), &g)).unwrap();
        let t1 = tor_bounded(&reg, &triv_left, 1).unwrap();
        assert_eq!(t1.dim, 0);
    }

    #[test]
    fn tor_one_of_trivial_with_trivial_over_f2_c2() {
        let g = builtins::cyclic(2);
        let triv = GModule::trivial(f2(), &g);
        let triv_left = crate::module::left_via_inverse(&triv).unwrap();
        let t1 = tor_bounded(&triv, &triv_left, 1).unwrap();
        assert_eq!(t1.dim, 1);
        // independent oracle: tensor the explicit periodic resolution
        // ... -> R[C_2] -(1+g)-> R[C_2] -> F_2 with the trivial module.
        // Each R[C_2] (x) F_2 is F_2 via augmentation and the induced map is
        // multiplication by aug(1+g), the row sum of the matrix of 1+g.
        let reg = GModule::regular(f2(), &g);
        let one_plus_g = reg
            .element_action(0)
            .add(reg.element_action(1))
            .unwrap();
        let induced_scalar = (0..2).fold(0u64, |acc, j| (acc + one_plus_g.get(0, j)) % 2);
        assert_eq!(induced_scalar, 0);
        // homology of ... F_2 -0-> F_2 -0-> F_2 ... is 1-dimensional
        let (kernel_dim, image_dim) = if induced_scalar == 0 { (1, 0) } else { (0, 1) };
        assert_eq!(kernel_dim - image_dim, 1);
    }

    #[test]
    fn tor_zero_against_group_algebra_gives_dim_m() {
        let g = builtins::sym3();
        let m = GModule::regular(f3(), &g);
        let bim = Bimodule::regular(f3(), &g);
        let t0 = tor_bounded(&m, &bim, 0).unwrap();
        assert_eq!(t0.dim, m.dim());
    }

    #[test]
    fn ext_examples() {
        let g = builtins::cyclic(2);
        let triv = GModule::trivial(f2(), &g);
        let reg = GModule::regular(f2(), &g);
        assert_eq!(ext_bounded(&reg, &triv, 1).unwrap(), 0);
        assert_eq!(ext_bounded(&triv, &triv, 1).unwrap(), 1);
        assert_eq!(
            ext_bounded(&triv, &triv, 0).unwrap(),
            hom_basis(&triv, &triv).unwrap().len()
        );
    }

    #[test]
    fn induced_and_restricted_dimensions() {
        let g = builtins::sym3();
        let t = g
            .element_index(&crate::group::perm_from_cycles(3, &[vec![0, 1]]).unwrap())
            .unwrap();
        let h = Subgroup::from_generators(&g, &[t]).unwrap();
        let m = GModule::regular(f2(), h.group());
        let ind = induce(&m, &h).unwrap();
        assert_eq!(ind.dim(), 3 * m.dim());
    }

    #[test]
    fn tensor_with_regular_is_projective() {
        let g = builtins::cyclic(2);
        let triv = GModule::trivial(f2(), &g);
        let reg = GModule::regular(f2(), &g);
        let t = reg.tensor_diag(&triv).unwrap();
        assert_eq!(t.dim(), 2);
        assert!(is_projective(&t).unwrap().is_projective);
    }
}
