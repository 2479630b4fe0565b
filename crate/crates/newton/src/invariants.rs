//! Invariants read off the Newton tree of an ideal: the valuations `N_v`,
//! the order multiplicity, the Hilbert–Samuel multiplicity by two routes,
//! `j(I)`, degree functions, Rees valuations and the Łojasiewicz exponent.

use algebra_core::{BPoly, IdealGens, Rat};
use serde_json::json;

use crate::dynamics::{run, AnalysisResult, RunConfig};
use crate::error::{NewtonError, Result};
use crate::geometry::{polygon_area2_anchored, weighted_order};
use crate::maps::{apply_map_poly, Mu, NewtonMap};
use crate::process::{maps_json, merge_aligned, processes_equivalent, reconstruct_with_layout};
use crate::tree::{ArrowKey, ArrowKind, NewtonTree, Target, TreeLayout, VertexInfo};

/// Whether the analysed ideal has finite codimension.
pub fn is_finite_codim(a: &AnalysisResult) -> bool {
    a.split.is_finite_codim()
}

fn require_finite(a: &AnalysisResult) -> Result<()> {
    if is_finite_codim(a) {
        Ok(())
    } else {
        Err(NewtonError::NotFiniteCodim)
    }
}

fn vertex_info(a: &AnalysisResult, v: usize) -> Result<&VertexInfo> {
    a.layout
        .vertices
        .get(v)
        .ok_or(NewtonError::UnknownVertex(v))
}

/// Maps reaching vertex `v`, ending with the generic map of its face.
pub fn vertex_maps(info: &VertexInfo) -> Vec<NewtonMap> {
    let mut maps = info.path.clone();
    maps.push(crate::maps::make_map(info.p, info.m, Mu::Generic).expect("face data is coprime"));
    maps
}

/// `N_v(f)` by substitution: the `x`-order of `f` after the maps reaching
/// `v` and the generic map of its face.
pub fn valuation_direct(info: &VertexInfo, f: &BPoly) -> u64 {
    let mut order = 0u64;
    let mut g = f.clone();
    for map in &info.path {
        let (k, g1) = apply_map_poly(&g, map);
        order = order * map.p + k;
        g = g1;
    }
    order * info.p + weighted_order(&g, info.p, info.m)
}

/// The tree of `(f)·I` together with the arrows contributed by `f`.
pub struct ValuationContext {
    tree: NewtonTree,
    layout: TreeLayout,
    f_arrows: Vec<(usize, u64)>,
}

impl ValuationContext {
    /// Builds the product tree of `f` with the analysed ideal.
    pub fn new(a: &AnalysisResult, f: &BPoly, cfg: RunConfig) -> Result<ValuationContext> {
        let fa = run(&IdealGens::new(vec![f.clone()])?, cfg)?;
        let (merged, aligned) = merge_aligned(&[&fa.process, &a.process]);
        let (tree, layout) = reconstruct_with_layout(&merged)?;
        let (f_tree, f_layout) = reconstruct_with_layout(&aligned[0])?;
        let mut f_arrows = Vec::new();
        for (arrow, key) in f_tree.arrows.iter().zip(&f_layout.arrows) {
            if arrow.mult == 0 {
                continue;
            }
            let alternate = ArrowKey {
                path: key.path.clone(),
                kind: match key.kind {
                    ArrowKind::Branch => ArrowKind::Bottom,
                    ArrowKind::Bottom => ArrowKind::Branch,
                    ArrowKind::Top => ArrowKind::Top,
                },
            };
            let idx = layout
                .find_arrow(key)
                .or_else(|| layout.find_arrow(&alternate))
                .ok_or_else(|| {
                    NewtonError::CrossCheckFailure(format!(
                        "arrow of f at {:?} missing from the product tree",
                        key.path.iter().map(ToString::to_string).collect::<Vec<_>>()
                    ))
                })?;
            f_arrows.push((idx, arrow.mult));
        }
        Ok(ValuationContext {
            tree,
            layout,
            f_arrows,
        })
    }

    /// `N_v(f) = Σ ρ_{v,g} m(g)` over the arrows `g` of `f`.
    pub fn combinatorial(&self, info: &VertexInfo) -> Result<u64> {
        let w = self.layout.find_vertex(info).ok_or_else(|| {
            NewtonError::CrossCheckFailure("vertex missing from the product tree".into())
        })?;
        Ok(self
            .f_arrows
            .iter()
            .map(|&(a, m)| self.tree.rho_path(w, Target::Arrow(a)) * m)
            .sum())
    }
}

fn valuation_checked(ctx: &ValuationContext, info: &VertexInfo, f: &BPoly) -> Result<u64> {
    let direct = valuation_direct(info, f);
    let comb = ctx.combinatorial(info)?;
    if direct != comb {
        return Err(NewtonError::CrossCheckFailure(format!(
            "N_v(f) is {direct} by substitution and {comb} on the tree"
        )));
    }
    Ok(direct)
}

/// `N_v(f)` at vertex `v` of the analysed tree, computed on the tree of
/// `(f)·I` and by substitution, which must agree.
pub fn valuation_nv(a: &AnalysisResult, v: usize, f: &BPoly, cfg: RunConfig) -> Result<u64> {
    let info = vertex_info(a, v)?;
    let ctx = ValuationContext::new(a, f, cfg)?;
    valuation_checked(&ctx, info, f)
}

/// Order multiplicity `m(I) = Σ ρ(v) d_v`.
pub fn mult_m(a: &AnalysisResult) -> Result<u64> {
    require_finite(a)?;
    Ok(a.tree
        .dicriticals()
        .into_iter()
        .map(|v| a.tree.rho0(v) * a.tree.vertices[v].d)
        .sum())
}

/// Hilbert–Samuel multiplicity `e(I) = Σ N_v d_v`.
pub fn hs_multiplicity(a: &AnalysisResult) -> Result<u64> {
    require_finite(a)?;
    Ok(a.tree.vertices.iter().map(|v| v.n * v.d).sum())
}

/// Twice the areas of the anchored polygons of all nodes, summed; checked
/// against [`hs_multiplicity`].
pub fn hs_via_areas(a: &AnalysisResult) -> Result<u64> {
    require_finite(a)?;
    let mut total = 0;
    for node in &a.nodes {
        total += polygon_area2_anchored(&node.diagram, node.anchor)?;
    }
    let e = hs_multiplicity(a)?;
    if total != e {
        return Err(NewtonError::CrossCheckFailure(format!(
            "area sum {total} differs from Σ N_v d_v = {e}"
        )));
    }
    Ok(total)
}

/// Degree function `d_I(f) = Σ N_v(f) d_v` for `I` of finite codimension.
pub fn degree_function(a: &AnalysisResult, f: &BPoly, cfg: RunConfig) -> Result<u64> {
    require_finite(a)?;
    if f.is_zero() || !f.vanishes_at_origin() {
        return Err(NewtonError::Malformed(
            "the degree function needs a nonzero f vanishing at the origin".into(),
        ));
    }
    let ctx = ValuationContext::new(a, f, cfg)?;
    let mut total = 0;
    for v in a.tree.dicriticals() {
        total += valuation_checked(&ctx, &a.layout.vertices[v], f)? * a.tree.vertices[v].d;
    }
    Ok(total)
}

/// `j(I) = e(I₁) + d_{I₁}(x^a y^b ∏ g_j^{m_j})` for `I = x^a y^b ∏ g_j^{m_j} · I₁`.
pub fn j_multiplicity(a: &AnalysisResult, cfg: RunConfig) -> Result<u64> {
    if is_finite_codim(a) {
        return hs_multiplicity(a);
    }
    let Some(c) = a.cofactor_analysis.as_deref() else {
        return Ok(0);
    };
    let mut total = hs_multiplicity(c)?;
    let s = &a.split;
    if s.x > 0 {
        total += s.x * degree_function(c, &BPoly::monomial(Rat::one(), 1, 0), cfg)?;
    }
    if s.y > 0 {
        total += s.y * degree_function(c, &BPoly::monomial(Rat::one(), 0, 1), cfg)?;
    }
    for (g, m) in &s.curves {
        total += m * degree_function(c, g, cfg)?;
    }
    Ok(total)
}

/// A Rees valuation of `I`, given by a dicritical vertex of its tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesValuation {
    pub vertex: usize,
    pub maps: Vec<NewtonMap>,
    pub n: u64,
    pub d: u64,
    pub rho: u64,
    /// Chain `S(v)` of vertex ids, outermost first.
    pub chain: Vec<usize>,
}

/// The Rees valuations of an ideal of finite codimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DicriticalReport {
    pub valuations: Vec<ReesValuation>,
}

/// One record per dicritical vertex, in tree order.
pub fn rees_valuations(a: &AnalysisResult) -> Result<DicriticalReport> {
    require_finite(a)?;
    Ok(DicriticalReport {
        valuations: a
            .tree
            .dicriticals()
            .into_iter()
            .map(|v| ReesValuation {
                vertex: v,
                maps: vertex_maps(&a.layout.vertices[v]),
                n: a.tree.vertices[v].n,
                d: a.tree.vertices[v].d,
                rho: a.tree.rho0(v),
                chain: a.tree.chain(v),
            })
            .collect(),
    })
}

/// Łojasiewicz exponent `L₀(I) = max N_v / ρ(v)` over dicritical vertices.
pub fn lojasiewicz(a: &AnalysisResult) -> Result<Rat> {
    require_finite(a)?;
    a.tree
        .dicriticals()
        .into_iter()
        .map(|v| Rat::new(a.tree.vertices[v].n, a.tree.rho0(v)))
        .max()
        .ok_or(NewtonError::NotFiniteCodim)
}

/// Whether two ideals have the same integral closure.
pub fn same_integral_closure(i: &IdealGens, j: &IdealGens, cfg: RunConfig) -> Result<bool> {
    Ok(processes_equivalent(
        &run(i, cfg)?.process,
        &run(j, cfg)?.process,
    ))
}

/// Invariants of one ideal; the fields defined only in finite codimension
/// are `None` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub depth: usize,
    pub nondegenerate: bool,
    pub mult_m: Option<u64>,
    pub e: Option<u64>,
    pub e_area: Option<u64>,
    pub j: u64,
    pub lojasiewicz: Option<Rat>,
    pub rees: Option<DicriticalReport>,
}

/// Computes every invariant of the analysed ideal.
pub fn invariant_report(a: &AnalysisResult, cfg: RunConfig) -> Result<InvariantReport> {
    let finite = is_finite_codim(a);
    Ok(InvariantReport {
        depth: a.depth,
        nondegenerate: a.depth <= 1,
        mult_m: finite.then(|| mult_m(a)).transpose()?,
        e: finite.then(|| hs_multiplicity(a)).transpose()?,
        e_area: finite.then(|| hs_via_areas(a)).transpose()?,
        j: j_multiplicity(a, cfg)?,
        lojasiewicz: finite.then(|| lojasiewicz(a)).transpose()?,
        rees: finite.then(|| rees_valuations(a)).transpose()?,
    })
}

impl InvariantReport {
    /// The report as JSON.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "depth": self.depth,
            "nondegenerate": self.nondegenerate,
            "mult_m": self.mult_m,
            "e": self.e,
            "e_area": self.e_area,
            "j": self.j,
            "lojasiewicz": self.lojasiewicz.as_ref().map(|r| json!({
                "num": r.numer().to_string().parse::<i64>().map_or_else(|_| json!(r.numer().to_string()), |n| json!(n)),
                "den": r.denom().to_string().parse::<i64>().map_or_else(|_| json!(r.denom().to_string()), |n| json!(n)),
            })),
            "rees": self.rees.as_ref().map(|r| r.valuations.iter().map(|v| json!({
                "maps": maps_json(&v.maps),
                "N": v.n,
                "d": v.d,
                "rho": v.rho,
            })).collect::<Vec<_>>()),
        })
    }
}
