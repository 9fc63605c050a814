//! Deterministic seeded verification sweeps. Each suite runs a family of
//! cases, records one result per case, and aggregates a verdict; the same
//! seed always produces the same report, so sweep output is suitable for
//! golden files.

use std::sync::Arc;

use crate::bundle::{
    bundle_coproduct, bundle_equalizer, bundle_product, coproduct_copairing, direct_sum,
    equalizer_lift, middle_linear_check, product_pairing, tensorcomm_check, BundleMorphism,
    FiniteBundle, MiddleLinearData,
};
use crate::error::{Error, Result};
use crate::group::{all_subgroups, builtins, FiniteGroup, GSpace, Subgroup};
use crate::homology::{pd_bounded, pd_direct_sum_max, Pd};
use crate::mackey::{decompose_group_algebra, mackey_verify};
use crate::mat::{solve_affine, Mat};
use crate::module::{hom_basis, perm_module, GModule, ModuleHom};
use crate::ring::ChainRing;

/// SplitMix64: a small deterministic generator, so sweep results do not
/// depend on any external randomness source.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        &xs[self.below(xs.len() as u64) as usize]
    }
}

#[derive(Debug, Clone)]
pub struct CaseResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub suite: String,
    pub seed: u64,
    pub cases: Vec<CaseResult>,
}

impl SweepReport {
    pub fn pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&CaseResult> {
        self.cases.iter().filter(|c| !c.pass).collect()
    }
}

/// Known suite names, in the order the CLI documents them.
pub const SUITES: &[&str] = &[
    "mackey-small",
    "impcorr",
    "peterlem",
    "tensorcomm",
    "universal-props",
    "solver-oracle",
];

pub fn run_suite(name: &str, seed: u64) -> Result<SweepReport> {
    match name {
        "mackey-small" => mackey_small_sweep(seed),
        "impcorr" => impcorr_sweep(seed),
        "peterlem" => peterlem_sweep(seed),
        "tensorcomm" => tensorcomm_sweep(seed),
        "universal-props" => universal_props_sweep(seed),
        "solver-oracle" => solver_oracle_sweep(seed),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

/// An invertible matrix built from random elementary row operations.
pub fn random_invertible(rng: &mut SplitMix64, ring: ChainRing, dim: usize) -> Mat {
    let mut t = Mat::identity(ring, dim);
    if dim == 0 {
        return t;
    }
    for _ in 0..2 * dim + 2 {
        let op = rng.below(3);
        let i = rng.below(dim as u64) as usize;
        let j = rng.below(dim as u64) as usize;
        match op {
            0 if i != j => {
                // add a multiple of row j to row i
                let c = rng.below(ring.modulus());
                for col in 0..dim {
                    let v = ring.add(t.get(i, col), ring.mul(c, t.get(j, col)));
                    t.set(i, col, v);
                }
            }
            1 if i != j => {
                for col in 0..dim {
                    let (a, b) = (t.get(i, col), t.get(j, col));
                    t.set(i, col, b);
                    t.set(j, col, a);
                }
            }
            _ => {
                // scale a row by a unit
                let mut u = rng.below(ring.modulus());
                while !ring.is_unit(u) {
                    u = rng.below(ring.modulus());
                }
                for col in 0..dim {
                    t.set(i, col, ring.mul(u, t.get(i, col)));
                }
            }
        }
    }
    t
}

/// A random module over the group, assembled from structural recipes:
/// trivial, regular, permutation on cosets, small sums, and random changes
/// of basis. Every output passes module validation.
pub fn random_module(
    rng: &mut SplitMix64,
    ring: ChainRing,
    group: &Arc<FiniteGroup>,
    subgroups: &[Subgroup],
    max_dim: usize,
) -> GModule {
    let base = match rng.below(4) {
        0 => GModule::trivial(ring, group),
        1 if group.order() <= max_dim => GModule::regular(ring, group),
        2 => {
            let sub = rng.pick(subgroups);
            let index = group.order() / sub.order();
            if index <= max_dim {
                let space = GSpace::cosets(group, sub).expect("coset space");
                GModule::permutation(ring, &space)
            } else {
                GModule::trivial(ring, group)
            }
        }
        _ => {
            let sub = rng.pick(subgroups);
            let index = group.order() / sub.order();
            let a = if index <= max_dim.saturating_sub(1) {
                let space = GSpace::cosets(group, sub).expect("coset space");
                GModule::permutation(ring, &space)
            } else {
                GModule::trivial(ring, group)
            };
            let b = GModule::trivial(ring, group);
            if a.dim() + b.dim() <= max_dim {
                a.direct_sum(&b).expect("same group")
            } else {
                a
            }
        }
    };
    let t = random_invertible(rng, ring, base.dim());
    base.conjugate(&t).expect("conjugation by an invertible")
}

/// A seeded dimension-2 module: the permutation module on the cosets of an
/// index-2 subgroup when one exists (in a random basis), otherwise two
/// copies of the trivial module.
pub fn random_dim2_module(
    rng: &mut SplitMix64,
    ring: ChainRing,
    group: &Arc<FiniteGroup>,
    subgroups: &[Subgroup],
) -> GModule {
    let index2: Vec<&Subgroup> = subgroups
        .iter()
        .filter(|s| s.order() * 2 == group.order())
        .collect();
    let base = if index2.is_empty() {
        let t = GModule::trivial(ring, group);
        t.direct_sum(&GModule::trivial(ring, group)).unwrap()
    } else {
        let sub = index2[rng.below(index2.len() as u64) as usize];
        let space = GSpace::cosets(group, sub).expect("coset space");
        GModule::permutation(ring, &space)
    };
    let t = random_invertible(rng, ring, 2);
    base.conjugate(&t).expect("conjugation")
}

fn field_rings() -> Vec<ChainRing> {
    vec![ChainRing::field(2).unwrap(), ChainRing::field(3).unwrap()]
}

/// The Mackey formula and the double-coset decomposition of the group
/// algebra across every subgroup pair of the built-in groups of order at
/// most 12, with trivial, regular, and one seeded dimension-2 module over
/// `F_2` and `F_3`.
pub fn mackey_small_sweep(seed: u64) -> Result<SweepReport> {
    let mut rng = SplitMix64::new(seed);
    let mut cases = Vec::new();
    for (gname, g) in builtins::sweep_groups() {
        if g.order() > 12 {
            continue;
        }
        let subs = all_subgroups(&g)?;
        for ring in field_rings() {
            for (hi, h) in subs.iter().enumerate() {
                for (ki, k) in subs.iter().enumerate() {
                    let dec = decompose_group_algebra(ring, &g, h, k)?;
                    cases.push(CaseResult {
                        name: format!(
                            "decompose/{}/p{}/H{}/K{}",
                            gname,
                            ring.p(),
                            hi,
                            ki
                        ),
                        pass: dec.size_formula_holds && dec.total_dim == g.order(),
                        detail: format!(
                            "blocks={:?}",
                            dec.cells.iter().map(|c| c.dim()).collect::<Vec<_>>()
                        ),
                    });
                    let modules: Vec<(&str, GModule)> = vec![
                        ("trivial", GModule::trivial(ring, h.group())),
                        ("regular", GModule::regular(ring, h.group())),
                        (
                            "rand2",
                            random_dim2_module(
                                &mut rng,
                                ring,
                                h.group(),
                                &all_subgroups(h.group())?,
                            ),
                        ),
                    ];
                    for (mname, m) in modules {
                        let report = mackey_verify(ring, &g, h, k, &m)?;
                        cases.push(CaseResult {
                            name: format!(
                                "mackey/{}/p{}/H{}/K{}/{}",
                                gname,
                                ring.p(),
                                hi,
                                ki,
                                mname
                            ),
                            pass: report.pass(),
                            detail: format!(
                                "lhs={} rhs={:?}",
                                report.lhs.dim(),
                                report
                                    .components
                                    .iter()
                                    .map(|c| c.fiber_dim)
                                    .collect::<Vec<_>>()
                            ),
                        });
                    }
                }
            }
        }
    }
    Ok(SweepReport {
        suite: "mackey-small".into(),
        seed,
        cases,
    })
}

fn small_pd_groups() -> Vec<(String, Arc<FiniteGroup>)> {
    builtins::sweep_groups()
        .into_iter()
        .filter(|(_, g)| g.order() <= 8)
        .collect()
}

/// Bounded projective dimension of a direct sum equals the fiberwise
/// maximum, on seeded bundles mixing projective and non-projective fibers.
pub fn impcorr_sweep(seed: u64) -> Result<SweepReport> {
    let mut rng = SplitMix64::new(seed);
    let groups = small_pd_groups();
    let mut cases = Vec::new();
    for case_idx in 0..30 {
        let (gname, g) = rng.pick(&groups).clone();
        let ring = *rng.pick(&field_rings());
        let subs = all_subgroups(&g)?;
        let n_fibers = 1 + rng.below(3) as usize;
        let mut fibers = Vec::new();
        for _ in 0..n_fibers {
            // mix: half the draws lean projective (regular-module based)
            if rng.below(2) == 0 && g.order() <= 8 {
                let t = random_invertible(&mut rng, ring, g.order());
                fibers.push(GModule::regular(ring, &g).conjugate(&t).unwrap());
            } else {
                fibers.push(random_module(&mut rng, ring, &g, &subs, 4));
            }
        }
        let refs: Vec<&GModule> = fibers.iter().collect();
        let (sum_pd, fiber_max) = pd_direct_sum_max(&refs, 4)?;
        cases.push(CaseResult {
            name: format!("impcorr/{}/{}/p{}", case_idx, gname, ring.p()),
            pass: sum_pd == fiber_max,
            detail: format!(
                "sum={} fibers_max={} dims={:?}",
                sum_pd,
                fiber_max,
                fibers.iter().map(|f| f.dim()).collect::<Vec<_>>()
            ),
        });
    }
    Ok(SweepReport {
        suite: "impcorr".into(),
        seed,
        cases,
    })
}

/// Over `F_p[G]` the bounded projective dimension is 0 or above any cutoff:
/// a value in `{1, 2, 3}` would contradict self-injectivity of the group
/// algebra. 50 seeded modules, groups of order at most 8, `p` in `{2, 3}`.
pub fn peterlem_sweep(seed: u64) -> Result<SweepReport> {
    let mut rng = SplitMix64::new(seed);
    let groups = small_pd_groups();
    let mut cases = Vec::new();
    for case_idx in 0..50 {
        let (gname, g) = rng.pick(&groups).clone();
        let ring = *rng.pick(&field_rings());
        let subs = all_subgroups(&g)?;
        let m = random_module(&mut rng, ring, &g, &subs, 4);
        let pd = pd_bounded(&m, 3)?;
        let ok = matches!(pd, Pd::Finite(0) | Pd::AboveCutoff);
        cases.push(CaseResult {
            name: format!("peterlem/{}/{}/p{}", case_idx, gname, ring.p()),
            pass: ok,
            detail: format!("dim={} pd={}", m.dim(), pd),
        });
    }
    Ok(SweepReport {
        suite: "peterlem".into(),
        seed,
        cases,
    })
}

fn tensorcomm_rings() -> Vec<ChainRing> {
    vec![
        ChainRing::field(2).unwrap(),
        ChainRing::field(3).unwrap(),
        ChainRing::new(2, 2).unwrap(),
    ]
}

/// The canonical map `((+)M_x) (x) ((+)N_y) -> (+)(M_x (x) N_y)` is
/// bijective on seeded bundle pairs, and the middle-linear universal
/// property holds on small element-table instances.
pub fn tensorcomm_sweep(seed: u64) -> Result<SweepReport> {
    let mut rng = SplitMix64::new(seed);
    let mut cases = Vec::new();
    for case_idx in 0..30 {
        let ring = *rng.pick(&tensorcomm_rings());
        let dims1: Vec<usize> = (0..1 + rng.below(3)).map(|_| rng.below(3) as usize).collect();
        let dims2: Vec<usize> = (0..1 + rng.below(3)).map(|_| rng.below(3) as usize).collect();
        let b1 = Arc::new(FiniteBundle::plain(ring, &dims1));
        let b2 = Arc::new(FiniteBundle::plain(ring, &dims2));
        let iso = tensorcomm_check(&b1, &b2)?;
        cases.push(CaseResult {
            name: format!("tensorcomm/{}/p{}k{}", case_idx, ring.p(), ring.k()),
            pass: iso.matrix().rows() == 0 || iso.is_bijective(),
            detail: format!("dims {:?} x {:?}", dims1, dims2),
        });
    }
    // middle-linear universal property on instances with small element sets
    for case_idx in 0..10 {
        let ring = ChainRing::field(2).unwrap();
        let d1 = 1 + rng.below(2) as usize;
        let d2 = 1 + rng.below(2) as usize;
        let dk = 1 + rng.below(2) as usize;
        let b1 = Arc::new(FiniteBundle::plain(ring, &[d1]));
        let b2 = Arc::new(FiniteBundle::plain(ring, &[d2]));
        let target = Arc::new(FiniteBundle::plain(ring, &[dk]));
        let mut bv = Mat::zero(ring, d1 * d2, dk);
        for r in 0..bv.rows() {
            for c in 0..dk {
                bv.set(r, c, rng.below(ring.modulus()));
            }
        }
        let data = MiddleLinearData::from_basis_values(&b1, &b2, &target, vec![0], &[bv])?;
        let factored = middle_linear_check(&b1, &b2, &target, &data);
        cases.push(CaseResult {
            name: format!("middle-linear/{}", case_idx),
            pass: factored.is_ok(),
            detail: format!("dims ({}, {}) -> {}", d1, d2, dk),
        });
    }
    Ok(SweepReport {
        suite: "tensorcomm".into(),
        seed,
        cases,
    })
}

fn random_hom_combination(
    rng: &mut SplitMix64,
    ring: ChainRing,
    homs: &[ModuleHom],
) -> Option<Mat> {
    if homs.is_empty() {
        return None;
    }
    let mut acc = Mat::zero(
        ring,
        homs[0].matrix().rows(),
        homs[0].matrix().cols(),
    );
    for h in homs {
        let c = rng.below(ring.modulus());
        acc = acc.add(&h.matrix().scale(c)).ok()?;
    }
    Some(acc)
}

/// Universal properties verified by the linear solver: the factoring map of
/// a bundle morphism through the direct sum exists and is unique, and the
/// product/coproduct mediating morphisms compose correctly.
pub fn universal_props_sweep(seed: u64) -> Result<SweepReport> {
    let mut rng = SplitMix64::new(seed);
    let mut cases = Vec::new();
    let rings = field_rings();
    let groups: Vec<Arc<FiniteGroup>> = vec![
        FiniteGroup::trivial(),
        builtins::cyclic(2),
        builtins::cyclic(3),
    ];
    for case_idx in 0..50 {
        let ring = *rng.pick(&rings);
        let g = rng.pick(&groups).clone();
        let subs = all_subgroups(&g)?;
        let n_points = 1 + rng.below(3) as usize;
        let fibers: Vec<Arc<GModule>> = (0..n_points)
            .map(|_| Arc::new(random_module(&mut rng, ring, &g, &subs, 3)))
            .collect();
        let labels = (0..n_points).map(|i| i.to_string()).collect();
        let bundle = Arc::new(FiniteBundle::new(ring, &g, labels, fibers)?);
        let target_mod = Arc::new(random_module(&mut rng, ring, &g, &subs, 3));
        // random bundle morphism into the one-point bundle on the target
        let target_bundle = Arc::new(FiniteBundle::one_point("*", (*target_mod).clone()));
        let mut fiber_mats = Vec::new();
        let mut ok = true;
        for x in 0..n_points {
            let homs = hom_basis(bundle.fiber(x), &target_mod)?;
            match random_hom_combination(&mut rng, ring, &homs) {
                Some(m) => fiber_mats.push(m),
                None => fiber_mats.push(Mat::zero(
                    ring,
                    bundle.fiber(x).dim(),
                    target_mod.dim(),
                )),
            }
        }
        let morphism = BundleMorphism::new(
            bundle.clone(),
            target_bundle,
            vec![0; n_points],
            fiber_mats.clone(),
        )?;
        // solve for the factoring hom through the direct sum and confirm it
        // is unique: unknowns F over the sum, constraints inj_x F = f_x
        let ds = direct_sum(&bundle)?;
        let sum_dim = ds.module.dim();
        let td = target_mod.dim();
        let mut a = Mat::zero(ring, sum_dim * td, sum_dim * td);
        // the constraint matrix is a permutation: entry (row of F) appears
        // in exactly one constraint; assemble b alongside
        let mut b = vec![0u64; sum_dim * td];
        for x in 0..n_points {
            let inj = ds.injection(x);
            let fx = &fiber_mats[x];
            for r in 0..inj.rows() {
                // the row of the sum hit by this fiber row
                let sum_row = (0..sum_dim)
                    .find(|&sr| inj.get(r, sr) == 1)
                    .expect("injection rows are unit vectors");
                for c in 0..td {
                    let constraint = sum_row * td + c;
                    a.set(sum_row * td + c, constraint, 1);
                    b[constraint] = fx.get(r, c);
                }
            }
        }
        let sols = solve_affine(&a, &b)?;
        let unique = sols.particular.is_some() && sols.kernel.rows() == 0;
        ok &= unique;
        if let Some(x) = sols.particular {
            let mut f = Mat::zero(ring, sum_dim, td);
            for r in 0..sum_dim {
                for c in 0..td {
                    f.set(r, c, x[r * td + c]);
                }
            }
            let hom = ModuleHom::new(ds.module.clone(), target_mod.clone(), f);
            ok &= hom.is_ok();
            if let Ok(hom) = hom {
                for x in 0..n_points {
                    let lhs = ds.injection(x).mul(hom.matrix()).unwrap();
                    ok &= lhs == *morphism.fiber_map(x).matrix();
                }
            }
        }
        cases.push(CaseResult {
            name: format!("sum-universal/{}", case_idx),
            pass: ok,
            detail: format!("points={} sum_dim={} target={}", n_points, sum_dim, td),
        });
    }
    // product and coproduct mediating morphisms
    for case_idx in 0..10 {
        let ring = *rng.pick(&rings);
        let b1 = Arc::new(FiniteBundle::plain(ring, &[1 + rng.below(2) as usize]));
        let b2 = Arc::new(FiniteBundle::plain(
            ring,
            &[rng.below(3) as usize, 1],
        ));
        let (prod, p1, p2) = bundle_product(&b1, &b2)?;
        // cone from a one-point bundle
        let z_mod = GModule::new(ring, &FiniteGroup::trivial(), 1, vec![])?;
        let z = Arc::new(FiniteBundle::one_point("z", z_mod));
        let zx = 0usize;
        let zy = rng.below(b2.n_points() as u64) as usize;
        let f = BundleMorphism::new(
            z.clone(),
            b1.clone(),
            vec![zx],
            vec![Mat::zero(ring, 1, b1.fiber(zx).dim())],
        )?;
        let gmor = BundleMorphism::new(
            z.clone(),
            b2.clone(),
            vec![zy],
            vec![Mat::zero(ring, 1, b2.fiber(zy).dim())],
        )?;
        let pairing = product_pairing(&prod, b2.n_points(), &f, &gmor)?;
        let back1 = pairing.compose(&p1)?;
        let back2 = pairing.compose(&p2)?;
        let ok = back1.space_map() == f.space_map()
            && back2.space_map() == gmor.space_map()
            && back1.fiber_map(0).matrix() == f.fiber_map(0).matrix()
            && back2.fiber_map(0).matrix() == gmor.fiber_map(0).matrix();
        cases.push(CaseResult {
            name: format!("product-universal/{}", case_idx),
            pass: ok,
            detail: String::new(),
        });

        let (cop, i1, i2) = bundle_coproduct(&b1, &b2)?;
        let w_mod = GModule::new(ring, &FiniteGroup::trivial(), 1, vec![])?;
        let w = Arc::new(FiniteBundle::one_point("w", w_mod));
        let l1 = BundleMorphism::new(
            b1.clone(),
            w.clone(),
            vec![0; b1.n_points()],
            b1.fibers()
                .iter()
                .map(|fb| Mat::zero(ring, fb.dim(), 1))
                .collect(),
        )?;
        let l2 = BundleMorphism::new(
            b2.clone(),
            w.clone(),
            vec![0; b2.n_points()],
            b2.fibers()
                .iter()
                .map(|fb| Mat::zero(ring, fb.dim(), 1))
                .collect(),
        )?;
        let copair = coproduct_copairing(&cop, &l1, &l2)?;
        let back1 = i1.compose(&copair)?;
        let back2 = i2.compose(&copair)?;
        let ok = back1.space_map() == l1.space_map() && back2.space_map() == l2.space_map();
        cases.push(CaseResult {
            name: format!("coproduct-universal/{}", case_idx),
            pass: ok,
            detail: String::new(),
        });
    }
    // equalizer lifts: a morphism equalizing two parallel maps lifts
    // uniquely through the difference-kernel bundle
    for case_idx in 0..10 {
        let ring = *rng.pick(&rings);
        let b = Arc::new(FiniteBundle::plain(ring, &[2]));
        let t = Arc::new(FiniteBundle::plain(ring, &[1]));
        let mut random_map = |rows: usize, cols: usize| {
            let mut m = Mat::zero(ring, rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    m.set(r, c, rng.below(ring.modulus()));
                }
            }
            m
        };
        let phi = BundleMorphism::new(b.clone(), t.clone(), vec![0], vec![random_map(2, 1)])?;
        let psi = BundleMorphism::new(b.clone(), t.clone(), vec![0], vec![random_map(2, 1)])?;
        let (eq, incl) = bundle_equalizer(&phi, &psi)?;
        // a morphism landing in the kernel, built through the equalizer
        let z = Arc::new(FiniteBundle::plain(ring, &[1]));
        let into_eq = BundleMorphism::new(
            z,
            eq.clone(),
            vec![0],
            vec![random_map(1, eq.fiber(0).dim())],
        )?;
        let h = into_eq.compose(&incl)?;
        let lift = equalizer_lift(&eq, &incl, &h)?;
        let back = lift.compose(&incl)?;
        let ok = back.fiber_map(0).matrix() == h.fiber_map(0).matrix()
            && lift.fiber_map(0).matrix() == into_eq.fiber_map(0).matrix();
        cases.push(CaseResult {
            name: format!("equalizer-universal/{}", case_idx),
            pass: ok,
            detail: format!("kernel-dim={}", eq.fiber(0).dim()),
        });
    }
    Ok(SweepReport {
        suite: "universal-props".into(),
        seed,
        cases,
    })
}

fn oracle_rings() -> Vec<ChainRing> {
    vec![
        ChainRing::new(2, 2).unwrap(),
        ChainRing::new(2, 3).unwrap(),
        ChainRing::new(3, 2).unwrap(),
        ChainRing::field(2).unwrap(),
        ChainRing::field(3).unwrap(),
    ]
}

/// Brute-force enumeration of `{x : x A = b}` for tiny systems.
fn brute_force_solutions(ring: ChainRing, a: &Mat, b: &[u64]) -> Vec<Vec<u64>> {
    let rows = a.rows();
    let total = (ring.modulus() as u128).pow(rows as u32) as usize;
    let mut out = Vec::new();
    for code in 0..total {
        let x = crate::mat::decode_element(ring, rows, code);
        let mut prod = vec![0u64; a.cols()];
        for (i, &xi) in x.iter().enumerate() {
            if xi != 0 {
                for (p, &ai) in prod.iter_mut().zip(a.row(i)) {
                    *p = ring.add(*p, ring.mul(xi, ai));
                }
            }
        }
        if prod == b {
            out.push(x);
        }
    }
    out.sort_unstable();
    out
}

/// Solution sets from the Howell-form solver match brute-force enumeration
/// exactly: 200 seeded systems per ring, at most 4 unknowns.
pub fn solver_oracle_sweep(seed: u64) -> Result<SweepReport> {
    let mut rng = SplitMix64::new(seed);
    let mut cases = Vec::new();
    for ring in oracle_rings() {
        let mut failures = 0usize;
        let mut first_failure = String::new();
        for case_idx in 0..200 {
            let rows = 1 + rng.below(4) as usize;
            let cols = 1 + rng.below(3) as usize;
            let mut a = Mat::zero(ring, rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    a.set(r, c, rng.below(ring.modulus()));
                }
            }
            // half the cases get a guaranteed-solvable right-hand side
            let b: Vec<u64> = if rng.below(2) == 0 {
                let x: Vec<u64> = (0..rows).map(|_| rng.below(ring.modulus())).collect();
                let mut prod = vec![0u64; cols];
                for (i, &xi) in x.iter().enumerate() {
                    for (p, &ai) in prod.iter_mut().zip(a.row(i)) {
                        *p = ring.add(*p, ring.mul(xi, ai));
                    }
                }
                prod
            } else {
                (0..cols).map(|_| rng.below(ring.modulus())).collect()
            };
            let sols = solve_affine(&a, &b)?;
            let solver_set = sols.enumerate(ring);
            let brute = brute_force_solutions(ring, &a, &b);
            if solver_set != brute {
                failures += 1;
                if first_failure.is_empty() {
                    first_failure = format!("case {}: A={:?} b={:?}", case_idx, a.to_rows(), b);
                }
            }
        }
        cases.push(CaseResult {
            name: format!("solver-oracle/p{}k{}", ring.p(), ring.k()),
            pass: failures == 0,
            detail: if failures == 0 {
                "200 cases".into()
            } else {
                format!("{} failures; {}", failures, first_failure)
            },
        });
    }
    Ok(SweepReport {
        suite: "solver-oracle".into(),
        seed,
        cases,
    })
}

/// Permutation modules of seeded G-sets decompose into modules induced from
/// point stabilizers, with explicit bijective witnesses. 20 seeded G-sets.
pub fn meldec_sweep(seed: u64) -> Result<SweepReport> {
    let mut rng = SplitMix64::new(seed);
    let groups = builtins::sweep_groups();
    let mut cases = Vec::new();
    for case_idx in 0..20 {
        let (gname, g) = rng.pick(&groups).clone();
        let ring = *rng.pick(&field_rings());
        let subs = all_subgroups(&g)?;
        let n_pieces = 1 + rng.below(3);
        let mut space: Option<GSpace> = None;
        for _ in 0..n_pieces {
            let sub = rng.pick(&subs);
            let piece = GSpace::cosets(&g, sub)?;
            space = Some(match space {
                None => piece,
                Some(s) => s.disjoint_union(&piece)?,
            });
        }
        let space = space.unwrap();
        let dec = perm_module(ring, &space)?;
        let mut ok = dec.sum_iso.is_bijective() || space.n_points() == 0;
        for comp in &dec.components {
            ok &= comp.witness.is_injective();
            ok &= comp.induced.dim() == comp.orbit.points.len();
        }
        let total: usize = dec.components.iter().map(|c| c.induced.dim()).sum();
        ok &= total == space.n_points();
        cases.push(CaseResult {
            name: format!("meldec/{}/{}/p{}", case_idx, gname, ring.p()),
            pass: ok,
            detail: format!(
                "points={} orbits={}",
                space.n_points(),
                dec.components.len()
            ),
        });
    }
    Ok(SweepReport {
        suite: "meldec".into(),
        seed,
        cases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix64::new(7);
        let mut b = SplitMix64::new(7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn random_invertible_is_invertible() {
        let ring = ChainRing::new(2, 2).unwrap();
        let mut rng = SplitMix64::new(3);
        for dim in 0..5 {
            let t = random_invertible(&mut rng, ring, dim);
            assert!(t.is_invertible());
        }
    }

    #[test]
    fn solver_oracle_passes() {
        let report = solver_oracle_sweep(7).unwrap();
        assert!(report.pass(), "failures: {:?}", report.failures());
    }

    #[test]
    fn meldec_sweep_passes() {
        let report = meldec_sweep(7).unwrap();
        assert!(report.pass(), "failures: {:?}", report.failures());
    }

    #[test]
    fn tensorcomm_sweep_passes() {
        let report = tensorcomm_sweep(7).unwrap();
        assert!(report.pass(), "failures: {:?}", report.failures());
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nope", 1).is_err());
    }
}
