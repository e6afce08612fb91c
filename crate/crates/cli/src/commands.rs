use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use diagcoh::caps::Caps;
use diagcoh::chaincomplex::spectral_sequence;
use diagcoh::diagramcoh::{
    diagram_bicomplex_truncated, diagram_cohomology, local_to_global, Convention, DiagramBundle, DiagramModule,
    GroupDiagram,
};
use diagcoh::fincat::{validate_category_capped, CategorySpec};
use diagcoh::groupcoh::{group_cohomology, FiniteGroup, GModule, GroupSpec, ModuleSpec};
use diagcoh::linalg::{FgAbelianGroup, Ring};
use diagcoh::natsys::{bw_cohomology, NaturalSystem, NaturalSystemSpec};
use diagcoh::psiring::{
    enumerate_span, psi_axioms, psi_derivation_system, psi_derivations, section_correspondence,
    sections_of_projection, semidirect_product, FreePsiRing, PsiFile, PsiModule, PsiObject, PsiRing,
};
use serde::de::DeserializeOwned;
use serde_json::json;

use crate::report::{grid_text, verdict, Report};
use crate::PsiAction;

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading `{}`", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing `{}`", path.display()))
}

fn groups_json(h: &[FgAbelianGroup], ring: Ring) -> serde_json::Value {
    json!(h
        .iter()
        .enumerate()
        .map(|(n, g)| json!({"degree": n, "group": g, "display": g.display_over(ring)}))
        .collect::<Vec<_>>())
}

fn groups_text(h: &[FgAbelianGroup], ring: Ring) -> String {
    h.iter()
        .enumerate()
        .map(|(n, g)| format!("H^{n} = {}\n", g.display_over(ring)))
        .collect()
}

fn recoefficient_module(m: &GModule, ring: Ring) -> Result<GModule> {
    let actions = m.actions().iter().map(|a| a.change_ring(ring)).collect::<Result<Vec<_>, _>>()?;
    Ok(GModule::new(m.group(), ring, m.dim(), actions)?)
}

pub fn bw(category: &Path, system: &Path, n_max: usize, ring: Option<Ring>, caps: &Caps) -> Result<Report> {
    let cat_spec: CategorySpec = read_json(category)?;
    let cat = validate_category_capped(&cat_spec, caps.morphisms)
        .with_context(|| format!("category `{}`", category.display()))?;
    let mut spec: NaturalSystemSpec = read_json(system)?;
    if let Some(r) = ring {
        spec.ring = r.to_string();
    }
    let sys = NaturalSystem::from_spec(&cat, &spec).with_context(|| format!("natural system `{}`", system.display()))?;
    caps.check_bw(&sys, n_max)?;
    let h = bw_cohomology(&sys, n_max)?;
    let ring = sys.ring();
    let json = json!({
        "command": "bw",
        "ring": ring.to_string(),
        "n_max": n_max,
        "cohomology": groups_json(&h, ring),
    });
    Ok(Report::new(json, groups_text(&h, ring), true))
}

pub fn group(group: &Path, module: &Path, n_max: usize, ring: Option<Ring>, caps: &Caps) -> Result<Report> {
    let g_spec: GroupSpec = read_json(group)?;
    let g = FiniteGroup::from_spec(&g_spec).with_context(|| format!("group `{}`", group.display()))?;
    let m_spec: ModuleSpec = read_json(module)?;
    let mut m = GModule::from_spec(&g, &m_spec).with_context(|| format!("module `{}`", module.display()))?;
    if let Some(r) = ring {
        m = recoefficient_module(&m, r).with_context(|| format!("module `{}`", module.display()))?;
    }
    caps.check_group(&m, n_max)?;
    let h = group_cohomology(&m, n_max)?;
    let ring = m.ring();
    let json = json!({
        "command": "group",
        "ring": ring.to_string(),
        "n_max": n_max,
        "cohomology": groups_json(&h, ring),
    });
    Ok(Report::new(json, groups_text(&h, ring), true))
}

fn load_bundle(path: &Path, ring: Option<Ring>) -> Result<(GroupDiagram, DiagramModule)> {
    let bundle: DiagramBundle = read_json(path)?;
    let ctx = || format!("diagram bundle `{}`", path.display());
    let (a, m) = bundle.load().with_context(ctx)?;
    let Some(r) = ring else { return Ok((a, m)) };
    let spaces = m
        .spaces()
        .iter()
        .map(|s| recoefficient_module(s, r))
        .collect::<Result<Vec<_>>>()
        .with_context(ctx)?;
    let maps = (0..a.index().morphism_count())
        .map(|f| m.map(f).change_ring(r))
        .collect::<Result<Vec<_>, _>>()
        .with_context(ctx)?;
    let m = DiagramModule::new(&a, r, spaces, maps).with_context(ctx)?;
    Ok((a, m))
}

fn clip(grid: &[Vec<usize>], pmax: usize, qmax: usize) -> Vec<Vec<usize>> {
    grid.iter().take(pmax + 1).map(|col| col.iter().copied().take(qmax + 1).collect()).collect()
}

#[allow(clippy::too_many_arguments)]
pub fn diagram(
    bundle: &Path,
    conv: Convention,
    n_max: Option<usize>,
    pmax: Option<usize>,
    qmax: Option<usize>,
    ring: Option<Ring>,
    caps: &Caps,
) -> Result<Report> {
    let n_max = n_max.unwrap_or(match (pmax, qmax) {
        (Some(p), Some(q)) => p + q,
        _ => 3,
    });
    let (pmax, qmax) = (pmax.unwrap_or(n_max), qmax.unwrap_or(n_max));
    let (a, m) = load_bundle(bundle, ring)?;
    caps.check_diagram(&a, &m, n_max, conv)?;
    let ring = m.ring();
    let h = diagram_cohomology(&a, &m, n_max, conv)?;
    let mut text = format!("convention: {conv}\n");
    text.push_str(&groups_text(&h, ring));
    if !ring.is_field() {
        let json = json!({
            "command": "diagram",
            "convention": conv,
            "ring": ring.to_string(),
            "n_max": n_max,
            "cohomology": groups_json(&h, ring),
            "spectral": null,
        });
        text.push_str("spectral sequence skipped: coefficients are not a field\n");
        return Ok(Report::new(json, text, true));
    }
    let l = local_to_global(&a, &m, n_max, conv)?;
    let ok = l.converges && l.e2_matches;
    let (e2, einf, e2_local) = (clip(&l.e2, pmax, qmax), clip(&l.einf, pmax, qmax), clip(&l.e2_local, pmax, qmax));
    text.push_str(&grid_text("E_2", &e2, pmax, qmax, n_max));
    text.push_str(&grid_text("E_inf", &einf, pmax, qmax, n_max));
    text.push_str(&format!(
        "E_2 = H_BW(I, local cohomology): {}\n",
        verdict(l.e2_matches)
    ));
    text.push_str(&format!(
        "convergence: {} (E_inf diagonals {:?}, total {:?})\n",
        verdict(l.converges),
        l.einf_diagonals,
        l.total
    ));
    let json = json!({
        "command": "diagram",
        "convention": conv,
        "ring": ring.to_string(),
        "n_max": n_max,
        "pmax": pmax,
        "qmax": qmax,
        "cohomology": groups_json(&h, ring),
        "e2": e2,
        "e2_local": e2_local,
        "einf": einf,
        "r_max": l.r_max,
        "total": l.total,
        "einf_diagonals": l.einf_diagonals,
        "e2_matches": l.e2_matches,
        "converges": l.converges,
    });
    Ok(Report::new(json, text, ok))
}

pub fn spectral(bundle: &Path, conv: Convention, n_max: usize, ring: Option<Ring>, caps: &Caps) -> Result<Report> {
    let (a, m) = load_bundle(bundle, ring)?;
    caps.check_diagram(&a, &m, n_max, conv)?;
    if !m.ring().is_field() {
        bail!("spectral pages need field coefficients; pass --ring q or --ring f<p>");
    }
    let top = n_max + 1;
    let d = diagram_bicomplex_truncated(&a, &m, top, top, Some(top), conv)?;
    let pages = spectral_sequence(&d)?;
    // only the triangle p + q <= n_max is free of truncation effects
    let tri = |g: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        (0..=n_max).map(|p| (0..=n_max - p).map(|q| g[p][q]).collect()).collect()
    };
    let mut text = format!("convention: {conv}\n");
    let mut out_pages = Vec::new();
    for r in 0..=pages.r_max {
        let g = tri(pages.page(r));
        text.push_str(&grid_text(&format!("E_{r}"), &g, n_max, n_max, n_max));
        out_pages.push(json!({"r": r, "dims": g}));
    }
    let einf = tri(&pages.einf);
    text.push_str(&grid_text("E_inf", &einf, n_max, n_max, n_max));
    let total: Vec<usize> = pages.total.iter().copied().take(n_max + 1).collect();
    let diagonals: Vec<usize> = (0..=n_max).map(|n| pages.einf_diagonal(n)).collect();
    let ok = total == diagonals;
    text.push_str(&format!(
        "convergence: {} (E_inf diagonals {diagonals:?}, total {total:?})\n",
        verdict(ok)
    ));
    let json = json!({
        "command": "spectral",
        "convention": conv,
        "ring": m.ring().to_string(),
        "n_max": n_max,
        "r_max": pages.r_max,
        "pages": out_pages,
        "einf": einf,
        "total": total,
        "einf_diagonals": diagonals,
        "converges": ok,
    });
    Ok(Report::new(json, text, ok))
}

pub fn psi(path: &Path, action: PsiAction, n_max: usize, caps: &Caps) -> Result<Report> {
    let file: PsiFile = read_json(path)?;
    let ctx = || format!("ψ-ring file `{}`", path.display());
    if action == PsiAction::Check {
        return psi_check(&file).with_context(ctx);
    }
    match file.load().with_context(ctx)? {
        PsiObject::Free(free) => match action {
            PsiAction::Free => Ok(psi_free(&free)),
            _ => bail!("`{}` describes a free ψ-ring; only `check` and `free` apply", path.display()),
        },
        PsiObject::Finite { ring, module } => {
            if action == PsiAction::Free {
                bail!("`{}` has a finite carrier; `free` needs a `symbolic` ring", path.display());
            }
            let module = module.with_context(|| format!("`{}` has no `module`", path.display()))?;
            caps.check_degree(n_max)?;
            if ring.order() > caps.order.max(64) || module.dim() > caps.dim {
                bail!(
                    "ring of order {} with a module of rank {} exceeds the limits (order {}, dim {})",
                    ring.order(),
                    module.dim(),
                    caps.order.max(64),
                    caps.dim
                );
            }
            match action {
                PsiAction::Derivations => psi_list_derivations(&ring, &module),
                PsiAction::Sections => psi_sections(&ring, &module),
                PsiAction::Bw => psi_bw(&ring, &module, n_max, caps),
                PsiAction::Check | PsiAction::Free => unreachable!(),
            }
        }
    }
}

fn psi_check(file: &PsiFile) -> Result<Report> {
    if file.symbolic.is_some() {
        let ok = file.load().map(|_| ()).map_err(|e| e.to_string());
        let check = json!({"axiom": "free ψ-ring laws", "passed": ok.is_ok(), "detail": ok.clone().err().unwrap_or_default()});
        let text = format!("{}: free ψ-ring laws{}\n", verdict(ok.is_ok()), ok.err().map(|e| format!(": {e}")).unwrap_or_default());
        let passed = check["passed"].as_bool().unwrap_or(false);
        return Ok(Report::new(json!({"command": "psi check", "checks": [check]}), text, passed));
    }
    let (monoid, ring, psi) = file.unchecked_parts()?;
    let mut checks = psi_axioms(&monoid, &ring, &psi);
    let mut ok = checks.iter().all(|c| c.passed);
    if ok && file.module.is_some() {
        let loaded = file.load();
        let detail = loaded.as_ref().err().map(|e| e.to_string());
        ok &= loaded.is_ok();
        checks.push(diagcoh::psiring::AxiomCheck {
            axiom: "ψ-module".into(),
            passed: detail.is_none(),
            detail,
        });
    }
    let mut text = String::new();
    for c in &checks {
        text.push_str(&format!("{}: {}", verdict(c.passed), c.axiom));
        if let Some(d) = &c.detail {
            text.push_str(&format!(": {d}"));
        }
        text.push('\n');
    }
    Ok(Report::new(json!({"command": "psi check", "checks": checks}), text, ok))
}

fn vector_text(v: &[u32]) -> String {
    format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
}

fn psi_list_derivations(ring: &PsiRing, module: &PsiModule) -> Result<Report> {
    let basis = psi_derivations(ring, module)?;
    let all = enumerate_span(&basis, module.prime())?;
    let r = ring.ring();
    let dim = module.dim();
    let mut text = format!(
        "Der_psi has dimension {} over F{} ({} derivations)\n",
        basis.ncols(),
        module.prime(),
        all.len()
    );
    let mut listed = Vec::new();
    for (i, d) in all.iter().enumerate() {
        let values: Vec<_> = (0..r.order()).map(|x| (r.name(x).to_string(), d[x * dim..(x + 1) * dim].to_vec())).collect();
        let shown: Vec<String> = values.iter().map(|(x, v)| format!("{x} -> {}", vector_text(v))).collect();
        text.push_str(&format!("d{i}: {}\n", shown.join(", ")));
        listed.push(values.into_iter().collect::<std::collections::BTreeMap<_, _>>());
    }
    let json = json!({
        "command": "psi derivations",
        "prime": module.prime(),
        "dimension": basis.ncols(),
        "count": all.len(),
        "derivations": listed,
    });
    Ok(Report::new(json, text, true))
}

fn psi_sections(ring: &PsiRing, module: &PsiModule) -> Result<Report> {
    let report = section_correspondence(ring, module)?;
    let sections = sections_of_projection(ring, module)?;
    let s = semidirect_product(ring, module)?;
    let r = ring.ring();
    let k = (module.prime() as usize).pow(module.dim() as u32);
    let mut text = format!(
        "{} sections, {} ψ-derivations, pairing {}\n",
        report.sections,
        report.derivations,
        verdict(report.pairing_verified)
    );
    let mut listed = Vec::new();
    for (i, sigma) in sections.iter().enumerate() {
        let pairs: Vec<String> = (0..r.order()).map(|x| format!("{} -> {}", r.name(x), s.ring().name(sigma[x]))).collect();
        let zero = sigma.iter().all(|&e| e % k == 0);
        text.push_str(&format!("s{i}: {}{}\n", pairs.join(", "), if zero { "  (d = 0)" } else { "" }));
        listed.push(
            (0..r.order())
                .map(|x| (r.name(x).to_string(), s.ring().name(sigma[x]).to_string()))
                .collect::<std::collections::BTreeMap<_, _>>(),
        );
    }
    let json = json!({
        "command": "psi sections",
        "report": report,
        "sections": listed,
    });
    Ok(Report::new(json, text, report.pairing_verified))
}

fn psi_bw(ring: &PsiRing, module: &PsiModule, n_max: usize, caps: &Caps) -> Result<Report> {
    let sys = psi_derivation_system(ring, module)?;
    caps.check_bw(&sys, n_max)?;
    let h = bw_cohomology(&sys, n_max)?;
    let field = module.field();
    let json = json!({
        "command": "psi bw",
        "ring": field.to_string(),
        "n_max": n_max,
        "cohomology": groups_json(&h, field),
    });
    Ok(Report::new(json, groups_text(&h, field), true))
}

fn psi_free(free: &FreePsiRing) -> Report {
    let monoid = free.monoid();
    let mut text = format!(
        "free ψ-ring on {} over a monoid of order {}: {} variables\n",
        free.generators().join(", "),
        monoid.order(),
        free.var_count()
    );
    let mut table = Vec::new();
    for m in 0..monoid.order() {
        let row: Vec<String> = (0..free.var_count()).map(|v| free.var_name(free.psi_var(m, v))).collect();
        text.push_str(&format!("Psi^{}: {}\n", monoid.name(m), row.join(" ")));
        table.push(json!({"element": monoid.name(m), "images": row}));
    }
    let laws = free.validate();
    text.push_str(&format!("laws: {}\n", verdict(laws.is_ok())));
    let json = json!({
        "command": "psi free",
        "generators": free.generators(),
        "variables": (0..free.var_count()).map(|v| free.var_name(v)).collect::<Vec<_>>(),
        "psi": table,
        "laws": laws.is_ok(),
    });
    Report::new(json, text, laws.is_ok())
}
