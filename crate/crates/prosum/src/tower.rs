//! Towers: finite chains of bundles with surjective transitions, the
//! finite-level stand-in for inverse systems. Includes the factorization of
//! a morphism through the least possible level, commutation checks between
//! direct sums and the (truncated) limit, and the non-splitting obstruction
//! for the epimorphism from a constant bundle onto the bundle with the same
//! fiber converging to zero.

use std::sync::Arc;

use crate::bundle::{direct_sum, BundleMorphism, FiniteBundle};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::mat::{enumerate_elements, Mat, RowSolver};
use crate::module::{GModule, ModuleHom};

/// A finite tower of bundles: `levels[0]` at the bottom, transitions going
/// downward, each surjective on spaces and on cosections.
#[derive(Debug, Clone)]
pub struct Tower {
    levels: Vec<Arc<FiniteBundle>>,
    transitions: Vec<BundleMorphism>,
}

impl Tower {
    pub fn new(levels: Vec<Arc<FiniteBundle>>, transitions: Vec<BundleMorphism>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidBundle("a tower needs at least one level".into()));
        }
        if transitions.len() + 1 != levels.len() {
            return Err(Error::InvalidMorphism(format!(
                "{} levels need {} transitions, found {}",
                levels.len(),
                levels.len() - 1,
                transitions.len()
            )));
        }
        for (j, t) in transitions.iter().enumerate() {
            if **t.source() != *levels[j + 1] || **t.target() != *levels[j] {
                return Err(Error::InvalidMorphism(format!(
                    "transition {} does not join level {} to level {}",
                    j,
                    j + 1,
                    j
                )));
            }
            if !t.space_map_surjective() {
                return Err(Error::TransitionNotSurjective(format!(
                    "space map of transition {} misses a point",
                    j
                )));
            }
            if !t.cosection_surjective() {
                return Err(Error::TransitionNotSurjective(format!(
                    "transition {} is not surjective on a fiber",
                    j
                )));
            }
        }
        Ok(Tower {
            levels,
            transitions,
        })
    }

    /// A constant tower with identity transitions.
    pub fn constant(bundle: &Arc<FiniteBundle>, depth: usize) -> Self {
        let levels = vec![bundle.clone(); depth + 1];
        let transitions = (0..depth).map(|_| BundleMorphism::identity(bundle)).collect();
        Tower {
            levels,
            transitions,
        }
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &Arc<FiniteBundle> {
        &self.levels[k]
    }

    pub fn top(&self) -> &Arc<FiniteBundle> {
        self.levels.last().unwrap()
    }

    /// Transition from level `j + 1` down to level `j`.
    pub fn transition(&self, j: usize) -> &BundleMorphism {
        &self.transitions[j]
    }

    /// Composite morphism from the top level down to level `k`.
    pub fn composite_to(&self, k: usize) -> Result<BundleMorphism> {
        let mut comp = BundleMorphism::identity(self.top());
        for j in (k..self.depth()).rev() {
            comp = comp.compose(&self.transitions[j])?;
        }
        Ok(comp)
    }
}

/// Outcome of the exact finite-level limit checks on a tower.
#[derive(Debug, Clone)]
pub struct TowerReport {
    pub depth: usize,
    pub sum_dims: Vec<usize>,
    /// Each transition induces a surjective homomorphism on direct sums.
    pub induced_sum_maps_surjective: bool,
    /// The squares relating fiber injections, transitions, and induced sum
    /// maps commute exactly.
    pub squares_commute: bool,
    /// The truncated limit of the chain of sums (the top sum, for a finite
    /// chain with surjective maps) projects onto every level's sum.
    pub top_projections_surjective: bool,
}

impl TowerReport {
    pub fn pass(&self) -> bool {
        self.induced_sum_maps_surjective && self.squares_commute && self.top_projections_surjective
    }
}

/// The module map on direct sums induced by a bundle morphism: the block at
/// `(x, f(x))` is the fiber map at `x`.
pub fn induced_sum_map(t: &BundleMorphism) -> Result<ModuleHom> {
    let src_sum = direct_sum(t.source())?;
    let tgt_sum = direct_sum(t.target())?;
    let ring = t.source().ring();
    let mut mat = Mat::zero(ring, src_sum.module.dim(), tgt_sum.module.dim());
    for x in 0..t.source().n_points() {
        let y = t.space_map()[x];
        let f = t.fiber_map(x).matrix();
        for r in 0..f.rows() {
            for c in 0..f.cols() {
                mat.set(src_sum.offsets[x] + r, tgt_sum.offsets[y] + c, f.get(r, c));
            }
        }
    }
    ModuleHom::new(src_sum.module.clone(), tgt_sum.module.clone(), mat)
}

pub fn tower_limit_checks(tower: &Tower) -> Result<TowerReport> {
    let mut sum_dims = Vec::new();
    for level in &tower.levels {
        sum_dims.push(direct_sum(level)?.module.dim());
    }
    let mut induced_maps = Vec::new();
    let mut all_surjective = true;
    for t in &tower.transitions {
        let hom = induced_sum_map(t)?;
        all_surjective &= hom.is_surjective();
        induced_maps.push(hom);
    }
    // squares: injection at x, then the induced sum map, equals the fiber
    // map then the injection at f(x)
    let mut squares = true;
    for (j, t) in tower.transitions.iter().enumerate() {
        let src_sum = direct_sum(t.source())?;
        let tgt_sum = direct_sum(t.target())?;
        let s = induced_maps[j].matrix();
        for x in 0..t.source().n_points() {
            let y = t.space_map()[x];
            let lhs = src_sum.injection(x).mul(s)?;
            let rhs = t.fiber_map(x).matrix().mul(tgt_sum.injection(y))?;
            if lhs != rhs {
                squares = false;
            }
        }
    }
    // projections from the top of the (truncated) chain of sums
    let mut top_projections = true;
    let mut comp: Option<Mat> = None;
    for j in (0..tower.transitions.len()).rev() {
        let step = induced_maps[j].matrix().clone();
        let next = match comp {
            None => step,
            Some(c) => c.mul(&step)?,
        };
        top_projections &= crate::mat::rows_span_everything(&next)
            || next.cols() == 0;
        comp = Some(next);
    }
    Ok(TowerReport {
        depth: tower.depth(),
        sum_dims,
        induced_sum_maps_surjective: all_surjective,
        squares_commute: squares,
        top_projections_surjective: top_projections,
    })
}

/// A factorization of a morphism from the top of a tower through a level.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub level: usize,
    pub morphism: BundleMorphism,
}

/// Least level `k` (at most `search_up_to`, default the top) through which
/// `phi` factors as a bundle morphism, together with the factoring morphism.
/// Factorization at `k` requires `phi` to be constant on the fibers of the
/// composite transition, on the space side and on the module side; both
/// conditions are checked exactly by solving for the factoring maps.
pub fn factor_through_level(
    tower: &Tower,
    phi: &BundleMorphism,
    search_up_to: Option<usize>,
) -> Result<Factorization> {
    if *phi.source() != *tower.top() {
        return Err(Error::InvalidMorphism(
            "morphism does not start at the tower's top level".into(),
        ));
    }
    let max_k = search_up_to.unwrap_or(tower.depth()).min(tower.depth());
    for k in 0..=max_k {
        let comp = tower.composite_to(k)?;
        if let Some(factorization) = try_factor(&comp, phi, k)? {
            return Ok(factorization);
        }
    }
    Err(Error::NoFactorization)
}

fn try_factor(
    comp: &BundleMorphism,
    phi: &BundleMorphism,
    level: usize,
) -> Result<Option<Factorization>> {
    let level_bundle = comp.target().clone();
    let target = phi.target().clone();
    let top_points = comp.source().n_points();
    // space map: phi must be constant on the space fibers of the composite
    let mut space_map = vec![usize::MAX; level_bundle.n_points()];
    for x in 0..top_points {
        let u = comp.space_map()[x];
        let z = phi.space_map()[x];
        if space_map[u] == usize::MAX {
            space_map[u] = z;
        } else if space_map[u] != z {
            return Ok(None);
        }
    }
    debug_assert!(space_map.iter().all(|&z| z != usize::MAX));
    // fiber maps: for each level point u, solve  comp_x * X_u = phi_x  for
    // all top points x over u simultaneously
    let mut fiber_mats = Vec::with_capacity(level_bundle.n_points());
    for u in 0..level_bundle.n_points() {
        let mut s: Option<Mat> = None;
        let mut p: Option<Mat> = None;
        for x in 0..top_points {
            if comp.space_map()[x] != u {
                continue;
            }
            let sx = comp.fiber_map(x).matrix().clone();
            let px = phi.fiber_map(x).matrix().clone();
            s = Some(match s {
                None => sx,
                Some(acc) => acc.vstack(&sx)?,
            });
            p = Some(match p {
                None => px,
                Some(acc) => acc.vstack(&px)?,
            });
        }
        let (s, p) = (s.expect("surjective space map"), p.expect("surjective space map"));
        // solve S X = P column by column via the transposed system
        let solver = RowSolver::new(&s.transpose());
        let Some(xt) = solver.solve_mat(&p.transpose()) else {
            return Ok(None);
        };
        fiber_mats.push(xt.transpose());
    }
    let morphism = BundleMorphism::new(level_bundle, target, space_map, fiber_mats)?;
    // confirm the factorization composes back to phi
    let recomposed = comp.compose(&morphism)?;
    for x in 0..top_points {
        if recomposed.space_map()[x] != phi.space_map()[x]
            || recomposed.fiber_map(x).matrix() != phi.fiber_map(x).matrix()
        {
            return Ok(None);
        }
    }
    Ok(Some(Factorization { level, morphism }))
}

/// The two towers of the non-splitting example over the spaces
/// `{1..k, *}`: the constant tower with fiber `P` everywhere, and the tower
/// with fiber `P` at `1..k` but `0` at `*`, with transitions lumping the new
/// point into `*`. The levelwise epimorphisms are returned alongside.
#[derive(Debug, Clone)]
pub struct LumpingTowers {
    pub constant: Tower,
    pub vanishing: Tower,
    pub epis: Vec<BundleMorphism>,
}

fn level_labels(k: usize) -> Vec<String> {
    let mut labels: Vec<String> = (1..=k).map(|i| i.to_string()).collect();
    labels.push("*".to_string());
    labels
}

pub fn lumping_towers(p: &GModule, depth: usize) -> Result<LumpingTowers> {
    if p.group().order() != 1 {
        return Err(Error::GroupMismatch);
    }
    if !p.ring().is_field() {
        return Err(Error::UnsupportedRing(p.ring().k()));
    }
    let ring = p.ring();
    let group = FiniteGroup::trivial();
    let zero = GModule::zero(ring, &group);
    let mut m_levels = Vec::new();
    let mut n_levels = Vec::new();
    for k in 0..=depth {
        let labels = level_labels(k);
        let m_fibers = vec![Arc::new(p.clone()); k + 1];
        let mut n_fibers: Vec<Arc<GModule>> = vec![Arc::new(p.clone()); k];
        n_fibers.push(Arc::new(zero.clone()));
        m_levels.push(Arc::new(FiniteBundle::new(
            ring,
            &group,
            labels.clone(),
            m_fibers,
        )?));
        n_levels.push(Arc::new(FiniteBundle::new(ring, &group, labels, n_fibers)?));
    }
    let dp = p.dim();
    let id_p = Mat::identity(ring, dp);
    let mut m_transitions = Vec::new();
    let mut n_transitions = Vec::new();
    for k in 0..depth {
        // source: level k+1 with points 1..k+1 then *; the point k+1 and *
        // both land on * downstairs
        let mut space_map: Vec<usize> = (0..k).collect();
        space_map.push(k); // point k+1 -> *
        space_map.push(k); // * -> *
        let mut m_mats = vec![id_p.clone(); k + 2];
        m_mats[k] = id_p.clone();
        let mut n_mats = vec![id_p.clone(); k];
        n_mats.push(Mat::zero(ring, dp, 0)); // P -> 0 at the lumped point
        n_mats.push(Mat::zero(ring, 0, 0)); // 0 -> 0 at *
        m_transitions.push(BundleMorphism::new(
            m_levels[k + 1].clone(),
            m_levels[k].clone(),
            space_map.clone(),
            m_mats,
        )?);
        n_transitions.push(BundleMorphism::new(
            n_levels[k + 1].clone(),
            n_levels[k].clone(),
            space_map,
            n_mats,
        )?);
    }
    let mut epis = Vec::new();
    for k in 0..=depth {
        let space_map: Vec<usize> = (0..=k).collect();
        let mut mats = vec![id_p.clone(); k];
        mats.push(Mat::zero(ring, dp, 0)); // P -> 0 over *
        epis.push(BundleMorphism::new(
            m_levels[k].clone(),
            n_levels[k].clone(),
            space_map,
            mats,
        )?);
    }
    Ok(LumpingTowers {
        constant: Tower::new(m_levels, m_transitions)?,
        vanishing: Tower::new(n_levels, n_transitions)?,
        epis,
    })
}

/// Result of the exhaustive splitting search on the lumping towers.
#[derive(Debug, Clone)]
pub struct SplittingReport {
    pub depth: usize,
    /// Number of bundle splittings of the epimorphism at each level.
    pub level_splitting_counts: Vec<u128>,
    pub every_level_splits: bool,
    /// Whether some choice of one splitting per level is compatible with
    /// every transition.
    pub compatible_family_exists: bool,
    /// First pair of consecutive levels admitting no compatible choice.
    pub first_incompatible_pair: Option<(usize, usize)>,
    /// Point of the upper level at which compatibility provably fails.
    pub witness_point: Option<String>,
}

/// Enumerates, per point, every fiber section of the epimorphism; a level
/// splitting is one choice per point (the space map of a splitting is forced
/// to be the identity by the section equation).
fn sections_per_point(epi: &BundleMorphism, cap: usize) -> Result<Vec<Vec<Mat>>> {
    let ring = epi.source().ring();
    let mut out = Vec::new();
    for x in 0..epi.source().n_points() {
        let dn = epi.target().fiber(x).dim();
        let dm = epi.source().fiber(x).dim();
        let eps = epi.fiber_map(x).matrix();
        let candidates = enumerate_elements(ring, dn * dm, cap)?;
        let mut valid = Vec::new();
        for cand in candidates {
            let mut s = Mat::zero(ring, dn, dm);
            for r in 0..dn {
                for c in 0..dm {
                    s.set(r, c, cand[r * dm + c]);
                }
            }
            let composite = s.mul(eps)?;
            if composite.is_identity() {
                valid.push(s);
            }
        }
        out.push(valid);
    }
    Ok(out)
}

/// Exhaustively enumerates level splittings of the constant-to-vanishing
/// epimorphism and searches for a family compatible with the transitions.
/// For a nonzero fiber the search always finds at least one splitting per
/// level, the canonical pairwise compatibility always fails at the freshly
/// lumped point, and no compatible family exists.
pub fn splitting_obstruction(p: &GModule, depth: usize, cap: usize) -> Result<SplittingReport> {
    let towers = lumping_towers(p, depth)?;
    let mut per_level: Vec<Vec<Vec<Mat>>> = Vec::new();
    let mut counts = Vec::new();
    for epi in &towers.epis {
        let sections = sections_per_point(epi, cap)?;
        let mut count: u128 = 1;
        for s in &sections {
            count = count.saturating_mul(s.len() as u128);
        }
        counts.push(count);
        per_level.push(sections);
    }
    let every_level_splits = counts.iter().all(|&c| c > 0);

    // pairwise compatibility between levels k and k+1, pointwise:
    //   N-transition(x) * s_k[f(x)] == s_{k+1}[x] * M-transition(x)
    let mut first_incompatible = None;
    let mut witness = None;
    let mut family_possible = every_level_splits;
    for k in 0..depth {
        let tn = towers.vanishing.transition(k);
        let tm = towers.constant.transition(k);
        let upper_points = towers.constant.level(k + 1).n_points();
        // per-point feasibility: a pair of section choices satisfying the
        // square at x
        let mut pair_feasible = true;
        let mut bad_point = None;
        for x in 0..upper_points {
            let fx = tm.space_map()[x];
            let mut feasible = false;
            'search: for s_lower in &per_level[k][fx] {
                for s_upper in &per_level[k + 1][x] {
                    let lhs = tn.fiber_map(x).matrix().mul(s_lower)?;
                    let rhs = s_upper.mul(tm.fiber_map(x).matrix())?;
                    if lhs == rhs {
                        feasible = true;
                        break 'search;
                    }
                }
            }
            if !feasible {
                pair_feasible = false;
                bad_point = Some(x);
                break;
            }
        }
        if !pair_feasible {
            family_possible = false;
            if first_incompatible.is_none() {
                first_incompatible = Some((k, k + 1));
                witness = bad_point
                    .map(|x| towers.constant.level(k + 1).label(x).to_string());
            }
        }
    }
    Ok(SplittingReport {
        depth,
        level_splitting_counts: counts,
        every_level_splits,
        compatible_family_exists: family_possible,
        first_incompatible_pair: first_incompatible,
        witness_point: witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ChainRing;

    fn f2() -> ChainRing {
        ChainRing::field(2).unwrap()
    }

    fn plain(dim: usize) -> GModule {
        GModule::new(f2(), &FiniteGroup::trivial(), dim, vec![]).unwrap()
    }

    #[test]
    fn constant_tower_passes_limit_checks() {
        let b = Arc::new(FiniteBundle::plain(f2(), &[1, 2]));
        let tower = Tower::constant(&b, 3);
        let report = tower_limit_checks(&tower).unwrap();
        assert!(report.pass());
        assert_eq!(report.sum_dims, vec![3, 3, 3, 3]);
    }

    #[test]
    fn lumping_towers_pass_limit_checks() {
        let towers = lumping_towers(&plain(1), 3).unwrap();
        assert!(tower_limit_checks(&towers.constant).unwrap().pass());
        assert!(tower_limit_checks(&towers.vanishing).unwrap().pass());
    }

    #[test]
    fn non_surjective_transition_is_rejected() {
        let upper = Arc::new(FiniteBundle::plain(f2(), &[1]));
        let lower = Arc::new(FiniteBundle::plain(f2(), &[1]));
        let zero_map = Mat::zero(f2(), 1, 1);
        let bad = BundleMorphism::new(upper.clone(), lower.clone(), vec![0], vec![zero_map])
            .unwrap();
        let err = Tower::new(vec![lower, upper], vec![bad]);
        assert!(matches!(err, Err(Error::TransitionNotSurjective(_))));
    }

    #[test]
    fn factor_through_level_finds_the_zero_morphism_at_bottom() {
        let towers = lumping_towers(&plain(1), 3).unwrap();
        let tower = &towers.constant;
        // zero morphism from the top into a zero-fiber one-point bundle
        let target = Arc::new(FiniteBundle::one_point("z", plain(0)));
        let top = tower.top();
        let phi = BundleMorphism::new(
            top.clone(),
            target,
            vec![0; top.n_points()],
            top.fibers().iter().map(|f| Mat::zero(f2(), f.dim(), 0)).collect(),
        )
        .unwrap();
        let fact = factor_through_level(tower, &phi, None).unwrap();
        assert_eq!(fact.level, 0);
    }

    #[test]
    fn factor_through_level_detects_composites() {
        let towers = lumping_towers(&plain(1), 3).unwrap();
        let tower = &towers.constant;
        // phi = composite down to level 1: factors at level 1, not below
        // (distinguishing point 1 from the lumped point prevents level 0)
        let phi = tower.composite_to(1).unwrap();
        let fact = factor_through_level(tower, &phi, None).unwrap();
        assert_eq!(fact.level, 1);
        // brute-force confirmation: no factorization through level 0 only
        assert!(matches!(
            factor_through_level(tower, &phi, Some(0)),
            Err(Error::NoFactorization)
        ));
    }

    #[test]
    fn factor_distinguishing_a_point_needs_the_level_that_separates_it() {
        // on the depth-3 constant tower over {1, 2, 3, *}, a morphism that
        // separates point 2 from the lumped points factors at level 2 and
        // no lower; brute-forced over every level
        let towers = lumping_towers(&plain(1), 3).unwrap();
        let tower = &towers.constant;
        let zero = plain(0);
        let target = Arc::new(
            FiniteBundle::new(
                f2(),
                &FiniteGroup::trivial(),
                vec!["a".into(), "b".into()],
                vec![Arc::new(zero.clone()), Arc::new(zero)],
            )
            .unwrap(),
        );
        let top = tower.top();
        // top points are 1, 2, 3, *; send 2 to "a", everything else to "b"
        let space_map = vec![1, 0, 1, 1];
        let fiber_mats = top
            .fibers()
            .iter()
            .map(|f| Mat::zero(f2(), f.dim(), 0))
            .collect();
        let phi = BundleMorphism::new(top.clone(), target, space_map, fiber_mats).unwrap();
        let found = factor_through_level(tower, &phi, None).unwrap();
        assert_eq!(found.level, 2);
        for k in 0..2 {
            assert!(matches!(
                factor_through_level(tower, &phi, Some(k)),
                Err(Error::NoFactorization)
            ));
        }
    }

    #[test]
    fn splitting_obstruction_for_f2_depth_two() {
        let report = splitting_obstruction(&plain(1), 2, 4096).unwrap();
        assert!(report.every_level_splits);
        assert!(!report.compatible_family_exists);
        assert_eq!(report.first_incompatible_pair, Some((0, 1)));
        // the witness is the freshly lumped point of the upper level
        assert_eq!(report.witness_point.as_deref(), Some("1"));
    }

    #[test]
    fn splitting_obstruction_depth_three_fails_between_first_levels() {
        let report = splitting_obstruction(&plain(1), 3, 4096).unwrap();
        assert!(report.every_level_splits);
        assert!(!report.compatible_family_exists);
        assert_eq!(report.first_incompatible_pair, Some((0, 1)));
    }

    #[test]
    fn zero_fiber_admits_compatible_splittings() {
        let report = splitting_obstruction(&plain(0), 2, 4096).unwrap();
        assert!(report.every_level_splits);
        assert!(report.compatible_family_exists);
    }
}
