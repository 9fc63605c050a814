//! Subcommand implementations: each resolves its inputs from the document,
//! runs the corresponding library operation, and assembles a deterministic
//! report. Input and schema problems surface as `DocError` (exit 2);
//! mathematical verdicts live inside the report (exit 0 or 1).


use prosum::bundle::{bundle_tensor, cosheaf_check, direct_sum, tensorcomm_check};
use prosum::group::FiniteGroup;
use prosum::homology::{ext_bounded, is_projective, pd_bounded, tor_bounded};
use prosum::mackey::mackey_verify;
use prosum::module::{left_via_inverse, perm_module, GModule};
use prosum::ring::ChainRing;
use prosum::sweeps::run_suite;
use prosum::tower::{factor_through_level, splitting_obstruction, tower_limit_checks};
use prosum::tree::tree_resolution_check;

use crate::doc::{DocError, DocResult, Entity, ResolvedDoc, ResolvedModule};
use crate::report::Report;

#[derive(Debug, Clone)]
pub struct Options {
    pub seed: u64,
    pub cutoff: usize,
    pub max_group_order: usize,
    pub suite: Option<String>,
    pub p: Option<u64>,
    pub dim: Option<usize>,
    pub depth: Option<usize>,
    pub max_level: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0,
            cutoff: 4,
            max_group_order: prosum::group::DEFAULT_GROUP_CAP,
            suite: None,
            p: None,
            dim: None,
            depth: None,
            max_level: None,
        }
    }
}

fn task<'d>(doc: &'d ResolvedDoc, name: &str) -> DocResult<&'d Entity> {
    doc.task
        .as_ref()
        .ok_or_else(|| DocError(format!("the '{}' subcommand needs a task block", name)))
}

fn lookup<'d, T>(
    map: &'d std::collections::BTreeMap<String, T>,
    name: &str,
    what: &str,
) -> DocResult<&'d T> {
    map.get(name)
        .ok_or_else(|| DocError(format!("task: unknown {} '{}'", what, name)))
}

fn right_module<'d>(doc: &'d ResolvedDoc, name: &str) -> DocResult<&'d GModule> {
    lookup(&doc.modules, name, "module")?.right("task")
}

pub fn cmd_mackey(doc: &ResolvedDoc, _opts: &Options) -> DocResult<Report> {
    let t = task(doc, "mackey")?;
    let ring = *lookup(&doc.rings, &t.ident("ring")?, "ring")?;
    let g = lookup(&doc.groups, &t.ident("group")?, "group")?;
    let h = lookup(&doc.subgroups, &t.ident("h")?, "subgroup")?;
    let k = lookup(&doc.subgroups, &t.ident("k")?, "subgroup")?;
    let m = right_module(doc, &t.ident("module")?)?;
    let mackey = mackey_verify(ring, g, h, k, m).map_err(DocError::from)?;
    let mut report = Report::new("mackey");
    report.param("ring", format!("Z/{}", ring.modulus()));
    report.param("group-order", g.order());
    report.param("h-order", h.order());
    report.param("k-order", k.order());
    report.param("module-dim", m.dim());
    report.info("lhs-dim", mackey.lhs.dim());
    report.info(
        "component-dims",
        format!(
            "{:?}",
            mackey
                .components
                .iter()
                .map(|c| c.fiber_dim)
                .collect::<Vec<_>>()
        ),
    );
    report.info(
        "double-coset-reps",
        mackey
            .components
            .iter()
            .map(|c| c.rep_cycles.clone())
            .collect::<Vec<_>>()
            .join(" "),
    );
    report.check(
        "dimension-bookkeeping",
        mackey.dimension_bookkeeping,
        format!(
            "lhs={} rhs-sum={}",
            mackey.lhs.dim(),
            mackey.rhs_sum.dim()
        ),
    );
    report.check("iso-bijective", mackey.iso_bijective, "");
    report.witness_matrix("iso", mackey.iso.matrix());
    Ok(report)
}

pub fn cmd_pd(doc: &ResolvedDoc, opts: &Options) -> DocResult<Report> {
    let t = task(doc, "pd")?;
    let m = right_module(doc, &t.ident("module")?)?;
    let pd = pd_bounded(m, opts.cutoff).map_err(DocError::from)?;
    let mut report = Report::new("pd");
    report.param("module-dim", m.dim());
    report.param("cutoff", opts.cutoff);
    report.info("pd", pd);
    Ok(report)
}

pub fn cmd_projective(doc: &ResolvedDoc, _opts: &Options) -> DocResult<Report> {
    let t = task(doc, "projective")?;
    let m = right_module(doc, &t.ident("module")?)?;
    let proj = is_projective(m).map_err(DocError::from)?;
    let mut report = Report::new("projective");
    report.param("module-dim", m.dim());
    report.info("is-projective", proj.is_projective);
    if let Some(section) = proj.section {
        report.witness_matrix("counit-section", section.matrix());
    }
    Ok(report)
}

pub fn cmd_tor(doc: &ResolvedDoc, _opts: &Options) -> DocResult<Report> {
    let t = task(doc, "tor")?;
    let m = right_module(doc, &t.ident("module")?)?;
    let i = t
        .get("i")
        .and_then(|v| match v {
            crate::doc::Value::Int(n) => Some(*n as usize),
            _ => None,
        })
        .ok_or_else(|| DocError("task: field 'i' must be an integer".into()))?;
    let left_entry = lookup(&doc.modules, &t.ident("left")?, "module")?;
    let owned;
    let left = match left_entry {
        ResolvedModule::Left(b) => b,
        ResolvedModule::Right(m) => {
            owned = left_via_inverse(m).map_err(DocError::from)?;
            &owned
        }
    };
    let tor = tor_bounded(m, left, i).map_err(DocError::from)?;
    let mut report = Report::new("tor");
    report.param("module-dim", m.dim());
    report.param("left-dim", left.dim());
    report.param("i", i);
    report.info("dim", tor.dim);
    Ok(report)
}

pub fn cmd_ext(doc: &ResolvedDoc, _opts: &Options) -> DocResult<Report> {
    let t = task(doc, "ext")?;
    let m = right_module(doc, &t.ident("module")?)?;
    let n = right_module(doc, &t.ident("target")?)?;
    let i = t
        .get("i")
        .and_then(|v| match v {
            crate::doc::Value::Int(n) => Some(*n as usize),
            _ => None,
        })
        .ok_or_else(|| DocError("task: field 'i' must be an integer".into()))?;
    let dim = ext_bounded(m, n, i).map_err(DocError::from)?;
    let mut report = Report::new("ext");
    report.param("module-dim", m.dim());
    report.param("target-dim", n.dim());
    report.param("i", i);
    report.info("dim", dim);
    Ok(report)
}

pub fn cmd_bundle_sum(doc: &ResolvedDoc, _opts: &Options) -> DocResult<Report> {
    let t = task(doc, "bundle-sum")?;
    let bundle = lookup(&doc.bundles, &t.ident("bundle")?, "bundle")?;
    let ds = direct_sum(bundle).map_err(DocError::from)?;
    let mut report = Report::new("bundle-sum");
    report.param("points", bundle.n_points());
    report.info(
        "fiber-dims",
        format!(
            "{:?}",
            bundle.fibers().iter().map(|f| f.dim()).collect::<Vec<_>>()
        ),
    );
    report.info("sum-dim", ds.module.dim());
    let mut injective = true;
    for x in 0..bundle.n_points() {
        injective &= ds.canonical.fiber_map(x).is_injective();
    }
    report.check("fiber-injections-injective", injective, "");
    Ok(report)
}

pub fn cmd_bundle_tensor(doc: &ResolvedDoc, _opts: &Options) -> DocResult<Report> {
    let t = task(doc, "bundle-tensor")?;
    let b1 = lookup(&doc.bundles, &t.ident("left")?, "bundle")?;
    let b2 = lookup(&doc.bundles, &t.ident("right")?, "bundle")?;
    let tensor = bundle_tensor(b1, b2).map_err(DocError::from)?;
    let iso = tensorcomm_check(b1, b2).map_err(DocError::from)?;
    let mut report = Report::new("bundle-tensor");
    report.param("left-points", b1.n_points());
    report.param("right-points", b2.n_points());
    report.info(
        "fiber-dims",
        format!(
            "{:?}",
            tensor.fibers().iter().map(|f| f.dim()).collect::<Vec<_>>()
        ),
    );
    report.check(
        "sum-commutation-bijective",
        iso.matrix().rows() == 0 || iso.is_bijective(),
        format!("matrix {}x{}", iso.matrix().rows(), iso.matrix().cols()),
    );
    Ok(report)
}

pub fn cmd_cosheaf_check(doc: &ResolvedDoc, _opts: &Options) -> DocResult<Report> {
    let t = task(doc, "cosheaf-check")?;
    let bundle = lookup(&doc.bundles, &t.ident("bundle")?, "bundle")?;
    let mut report = Report::new("cosheaf-check");
    report.param("points", bundle.n_points());
    match cosheaf_check(bundle) {
        Ok(result) => {
            report.check(
                "cosheaf-axiom",
                true,
                format!(
                    "subsets={} partitions={}",
                    result.subsets_checked, result.partitions_checked
                ),
            );
        }
        Err(prosum::Error::NotACosheaf(msg)) => {
            report.check("cosheaf-axiom", false, msg);
        }
        Err(e) => return Err(DocError::from(e)),
    }
    Ok(report)
}

pub fn cmd_tower_check(doc: &ResolvedDoc, _opts: &Options) -> DocResult<Report> {
    let t = task(doc, "tower-check")?;
    let tower = lookup(&doc.towers, &t.ident("tower")?, "tower")?;
    let result = tower_limit_checks(tower).map_err(DocError::from)?;
    let mut report = Report::new("tower-check");
    report.param("depth", result.depth);
    report.info("sum-dims", format!("{:?}", result.sum_dims));
    report.check(
        "induced-sum-maps-surjective",
        result.induced_sum_maps_surjective,
        "",
    );
    report.check("squares-commute", result.squares_commute, "");
    report.check(
        "top-projections-surjective",
        result.top_projections_surjective,
        "",
    );
    Ok(report)
}

pub fn cmd_factor(doc: &ResolvedDoc, opts: &Options) -> DocResult<Report> {
    let t = task(doc, "factor")?;
    let tower = lookup(&doc.towers, &t.ident("tower")?, "tower")?;
    let phi = lookup(&doc.morphisms, &t.ident("morphism")?, "morphism")?;
    let mut report = Report::new("factor");
    report.param("depth", tower.depth());
    if let Some(max) = opts.max_level {
        report.param("max-level", max);
    }
    match factor_through_level(tower, phi, opts.max_level) {
        Ok(f) => {
            report.info("level", f.level);
            report.check("factorization-found", true, format!("level {}", f.level));
        }
        Err(prosum::Error::NoFactorization) => {
            report.check(
                "factorization-found",
                false,
                "no factorization within the requested levels",
            );
        }
        Err(e) => return Err(DocError::from(e)),
    }
    Ok(report)
}

pub fn cmd_exproj(opts: &Options) -> DocResult<Report> {
    let p = opts
        .p
        .ok_or_else(|| DocError("exproj needs --p <prime>".into()))?;
    let dim = opts
        .dim
        .ok_or_else(|| DocError("exproj needs --dim <fiber dimension>".into()))?;
    let depth = opts
        .depth
        .ok_or_else(|| DocError("exproj needs --depth <levels>".into()))?;
    let ring = ChainRing::field(p).map_err(DocError::from)?;
    let fiber =
        GModule::new(ring, &FiniteGroup::trivial(), dim, vec![]).map_err(DocError::from)?;
    let result = splitting_obstruction(&fiber, depth, 4096).map_err(DocError::from)?;
    let mut report = Report::new("exproj");
    report.param("p", p);
    report.param("dim", dim);
    report.param("depth", depth);
    report.info(
        "level-splitting-counts",
        format!("{:?}", result.level_splitting_counts),
    );
    report.check("every-level-splits", result.every_level_splits, "");
    if dim == 0 {
        report.check(
            "compatible-family-exists",
            result.compatible_family_exists,
            "zero fiber splits compatibly",
        );
    } else {
        report.check(
            "no-compatible-family",
            !result.compatible_family_exists,
            "no choice of level splittings commutes with the transitions",
        );
        if let Some((lo, hi)) = result.first_incompatible_pair {
            report.info("first-incompatible-pair", format!("levels {} and {}", lo, hi));
        }
        if let Some(w) = &result.witness_point {
            report.info("witness-point", w);
            report.info(
                "witness-detail",
                "at the lumped point the identity on the fiber cannot factor through zero",
            );
        }
    }
    Ok(report)
}

pub fn cmd_meldec(doc: &ResolvedDoc, _opts: &Options) -> DocResult<Report> {
    let t = task(doc, "meldec")?;
    let ring = *lookup(&doc.rings, &t.ident("ring")?, "ring")?;
    let space = lookup(&doc.spaces, &t.ident("space")?, "space")?;
    let dec = perm_module(ring, space).map_err(DocError::from)?;
    let mut report = Report::new("meldec");
    report.param("points", space.n_points());
    report.param("group-order", space.group().order());
    report.info("orbits", dec.components.len());
    report.info(
        "orbit-dims",
        format!(
            "{:?}",
            dec.components
                .iter()
                .map(|c| c.induced.dim())
                .collect::<Vec<_>>()
        ),
    );
    report.info(
        "stabilizer-orders",
        format!(
            "{:?}",
            dec.components
                .iter()
                .map(|c| c.orbit.stabilizer.order())
                .collect::<Vec<_>>()
        ),
    );
    let mut witnesses_ok = true;
    for c in &dec.components {
        witnesses_ok &= c.witness.is_injective();
    }
    report.check("orbit-witnesses-injective", witnesses_ok, "");
    report.check(
        "sum-iso-bijective",
        space.n_points() == 0 || dec.sum_iso.is_bijective(),
        "",
    );
    Ok(report)
}

pub fn cmd_tree_resolution(doc: &ResolvedDoc, opts: &Options) -> DocResult<Report> {
    let t = task(doc, "tree-resolution")?;
    let ring = *lookup(&doc.rings, &t.ident("ring")?, "ring")?;
    let graph = lookup(&doc.graphs, &t.ident("graph")?, "graph")?;
    let module = match t.get("module") {
        None => None,
        Some(crate::doc::Value::Ident(name)) => Some(right_module(doc, name)?),
        Some(v) => {
            return Err(DocError(format!(
                "task: field 'module' must be a module name, found {:?}",
                v
            )))
        }
    };
    let result =
        tree_resolution_check(graph, ring, module, opts.cutoff).map_err(DocError::from)?;
    let mut report = Report::new("tree-resolution");
    report.param("vertices", result.n_vertices);
    report.param("edges", result.n_edges);
    report.info(
        "sequence-dims",
        format!("{} -> {} -> 1", result.n_edges, result.n_vertices),
    );
    report.info(
        "vertex-stabilizer-orders",
        format!("{:?}", result.vertex_orbits.stabilizer_orders),
    );
    report.info(
        "edge-stabilizer-orders",
        format!("{:?}", result.edge_orbits.stabilizer_orders),
    );
    report.check("boundary-injective", result.boundary_injective, "");
    report.check(
        "image-equals-augmentation-kernel",
        result.image_equals_augmentation_kernel,
        "",
    );
    report.check(
        "augmentation-surjective",
        result.augmentation_surjective,
        "",
    );
    if let Some(part) = result.module_part {
        report.info("pd-tensor-vertices", part.pd_tensor_vertices);
        report.info("pd-tensor-edges", part.pd_tensor_edges);
        match part.derived_bound {
            Some(bound) => {
                report.info("derived-pd-bound", bound);
                report.check(
                    "pd-within-derived-bound",
                    part.bound_confirmed.unwrap_or(false),
                    format!("bound {}", bound),
                );
            }
            None => {
                report.info("derived-pd-bound", "none (a tensor term exceeded the cutoff)");
            }
        }
    }
    Ok(report)
}

pub fn cmd_sweep(opts: &Options) -> DocResult<Report> {
    let suite = opts
        .suite
        .as_deref()
        .ok_or_else(|| DocError("sweep needs --suite <name>".into()))?;
    if !prosum::sweeps::SUITES.contains(&suite) {
        return Err(DocError(format!(
            "unknown suite '{}'; available: {}",
            suite,
            prosum::sweeps::SUITES.join(", ")
        )));
    }
    let result = run_suite(suite, opts.seed).map_err(DocError::from)?;
    let mut report = Report::new("sweep");
    report.param("suite", suite);
    report.param("seed", opts.seed);
    report.info("cases", result.cases.len());
    let failures = result.failures();
    report.check(
        "all-cases-pass",
        failures.is_empty(),
        format!("{} of {} passed", result.cases.len() - failures.len(), result.cases.len()),
    );
    for f in failures {
        report.info(
            "failed-case",
            format!("{} [{}] (rerun with --suite {} --seed {})", f.name, f.detail, suite, opts.seed),
        );
    }
    Ok(report)
}

pub fn dispatch(subcommand: &str, doc: Option<&ResolvedDoc>, opts: &Options) -> DocResult<Report> {
    let need_doc = |cmd: &str| -> DocResult<&ResolvedDoc> {
        doc.ok_or_else(|| DocError(format!("the '{}' subcommand needs --in <document>", cmd)))
    };
    match subcommand {
        "mackey" => cmd_mackey(need_doc("mackey")?, opts),
        "pd" => cmd_pd(need_doc("pd")?, opts),
        "projective" => cmd_projective(need_doc("projective")?, opts),
        "tor" => cmd_tor(need_doc("tor")?, opts),
        "ext" => cmd_ext(need_doc("ext")?, opts),
        "bundle-sum" => cmd_bundle_sum(need_doc("bundle-sum")?, opts),
        "bundle-tensor" => cmd_bundle_tensor(need_doc("bundle-tensor")?, opts),
        "cosheaf-check" => cmd_cosheaf_check(need_doc("cosheaf-check")?, opts),
        "tower-check" => cmd_tower_check(need_doc("tower-check")?, opts),
        "factor" => cmd_factor(need_doc("factor")?, opts),
        "exproj" => cmd_exproj(opts),
        "meldec" => cmd_meldec(need_doc("meldec")?, opts),
        "tree-resolution" => cmd_tree_resolution(need_doc("tree-resolution")?, opts),
        "sweep" => cmd_sweep(opts),
        other => Err(DocError(format!("unknown subcommand '{}'", other))),
    }
}
