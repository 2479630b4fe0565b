//! The Newton algorithm driver.
//!
//! The ideal `I = x^a y^b · g · I₁` is split into its monomial content, the
//! squarefree factors `g_j^{m_j}` of the gcd `g` of the generators that pass
//! through the origin, and the cofactor ideal `I₁ = (f_i / g)`, which has
//! finite codimension. These "parts" are carried through one joint
//! recursion. At each node the Newton diagram of the product is the Minkowski
//! sum of the part diagrams, and along a face the face polynomial is the
//! product of the parts' face polynomials while only the ideal part
//! contributes a dicritical degree. Every rational root of a face polynomial
//! is followed by its Newton map, keeping only the parts that have that root.
//!
//! A node has depth zero when it carries only `y`-content, or a single smooth
//! curve part `(y + h(x))^ν` and nothing else. Such a node ends its branch of
//! the process and becomes an arrow of the tree.

use std::collections::BTreeMap;

use algebra_core::{gcd_many, rational_roots, squarefree_decompose, BPoly, IdealGens, Rat, UPoly};

use crate::error::{NewtonError, Result};
use crate::geometry::{
    diagram_of_points, diagram_of_polys, face_label, faces, height, initial_decomposition,
    weighted_order, Face, NewtonDiagram, Point,
};
use crate::maps::{apply_map_ideal, apply_map_poly, make_map, Mu, NewtonMap};
use crate::process::{reconstruct_tree, NewtonProcess, ProcessEntry, Terminal};
use crate::tree::{
    build_tree, ChildSpec, ColumnSpec, FaceSpec, NewtonTree, RootSpec, TreeLayout, TreeSpec,
};

/// Options of [`run`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Largest number of nested polygons explored.
    pub max_depth: usize,
    /// Reject face polynomials with irrational roots instead of skipping them.
    pub strict_field: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_depth: 10_000,
            strict_field: true,
        }
    }
}

/// A face of a node polygon with its initial data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRecord {
    pub face: Face,
    pub d: u64,
    /// Face polynomial `F(1, X)` of the node's product of parts.
    pub face_poly: UPoly,
    /// Rational roots with multiplicities, ascending.
    pub roots: Vec<(Rat, u64)>,
    /// Degree of the part of the face polynomial without rational roots.
    pub residual_degree: u64,
}

/// A node of the algorithm with a nonempty polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeRecord {
    /// Maps reaching the node.
    pub path: Vec<NewtonMap>,
    /// `x`-content of the node's ideal.
    pub anchor: u64,
    /// Diagram of the node's ideal, `x`-content included.
    pub diagram: NewtonDiagram,
    pub faces: Vec<FaceRecord>,
    /// Whether `h = Σ_S p_S (d_S + Σ ν_{S,i})` holds at this node.
    pub height_identity: bool,
}

/// The decomposition `I = x^a y^b · ∏ g_j^{m_j} · I₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalSplit {
    pub x: u64,
    pub y: u64,
    /// Squarefree curve factors through the origin with multiplicities.
    pub curves: Vec<(BPoly, u64)>,
    /// Finite-codimension cofactor, `None` when it is the unit ideal.
    pub cofactor: Option<IdealGens>,
}

impl PrincipalSplit {
    /// Whether the ideal has finite codimension.
    pub fn is_finite_codim(&self) -> bool {
        self.x == 0 && self.y == 0 && self.curves.is_empty() && self.cofactor.is_some()
    }
}

/// Everything the algorithm produces for one ideal.
#[derive(Clone, Debug)]
pub struct AnalysisResult {
    pub content: (u64, u64),
    pub tree: NewtonTree,
    pub layout: TreeLayout,
    pub process: NewtonProcess,
    pub depth: usize,
    pub nodes: Vec<NodeRecord>,
    pub split: PrincipalSplit,
    /// Faces skipped because their roots are not rational (non-strict runs).
    pub unresolved: Vec<String>,
    /// Analysis of the cofactor `I₁` when `I` is not of finite codimension.
    pub cofactor_analysis: Option<Box<AnalysisResult>>,
}

impl AnalysisResult {
    /// Fails unless every face polynomial was fully resolved over `Q`.
    pub fn require_complete(&self) -> Result<()> {
        match self.unresolved.first() {
            None => Ok(()),
            Some(face) => Err(NewtonError::GroundFieldInsufficient {
                face: face.clone(),
                poly: "skipped in a non-strict run".into(),
            }),
        }
    }
}

#[derive(Clone, Debug)]
struct Part {
    gens: Vec<BPoly>,
    mult: u64,
    ideal: bool,
}

enum NodeOut {
    Y(u64),
    Branch { cert: BPoly, nu: u64 },
    Poly { y: u64, faces: Vec<FaceOut> },
}

struct FaceOut {
    p: u64,
    m: u64,
    n: u64,
    d: u64,
    children: Vec<(NewtonMap, NodeOut)>,
}

struct Driver {
    cfg: RunConfig,
    nodes: Vec<NodeRecord>,
    unresolved: Vec<String>,
}

fn path_label(path: &[NewtonMap]) -> String {
    if path.is_empty() {
        return "root".into();
    }
    path.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl Driver {
    fn explore(
        &mut self,
        path: &[NewtonMap],
        anchor: u64,
        y: u64,
        parts: Vec<Part>,
    ) -> Result<NodeOut> {
        if !parts.iter().any(|p| p.ideal) {
            if parts.is_empty() {
                return Ok(NodeOut::Y(y));
            }
            if parts.len() == 1 && y == 0 && !parts[0].gens[0].coeff(0, 1).is_zero() {
                return Ok(NodeOut::Branch {
                    cert: parts[0].gens[0].clone(),
                    nu: parts[0].mult,
                });
            }
        }
        if path.len() >= self.cfg.max_depth {
            return Err(NewtonError::DepthGuardExceeded(self.cfg.max_depth));
        }

        let part_diagrams: Vec<NewtonDiagram> =
            parts.iter().map(|p| diagram_of_polys(&p.gens)).collect();
        let joint = joint_diagram(&parts, &part_diagrams, y);
        let joint_faces = faces(&joint);
        let part_faces: Vec<Vec<Face>> = part_diagrams.iter().map(faces).collect();

        let mut records = Vec::with_capacity(joint_faces.len());
        let mut outs = Vec::with_capacity(joint_faces.len());
        let mut height_sum = 0;
        for face in &joint_faces {
            let mut d = 0;
            let mut face_poly = UPoly::one();
            let mut residual_degree = 0;
            let mut roots: BTreeMap<Rat, (u64, Vec<usize>)> = BTreeMap::new();
            for (i, part) in parts.iter().enumerate() {
                let Some(pf) = part_faces[i]
                    .iter()
                    .find(|f| (f.p, f.q) == (face.p, face.q))
                else {
                    continue;
                };
                let dec = initial_decomposition(&part.gens, pf);
                d += part.mult * dec.d;
                face_poly = face_poly.mul(&dec.face_poly.pow(part.mult as u32));
                let (rs, residual) = rational_roots(&dec.face_poly);
                if !residual.is_constant() {
                    let label = format!("{} at {}", face_label(face), path_label(path));
                    if self.cfg.strict_field {
                        return Err(NewtonError::GroundFieldInsufficient {
                            face: label,
                            poly: dec.face_poly.to_string(),
                        });
                    }
                    residual_degree += part.mult * residual.degree().unwrap_or(0) as u64;
                    self.unresolved.push(label);
                }
                for (r, m) in rs {
                    let slot = roots.entry(r).or_insert((0, Vec::new()));
                    slot.0 += part.mult * u64::from(m);
                    slot.1.push(i);
                }
            }
            let nu_total: u64 = roots.values().map(|v| v.0).sum();
            height_sum += face.p * (d + nu_total + residual_degree);
            let vertex_n = face.p * anchor + face.n;
            let mut children = Vec::with_capacity(roots.len());
            for (mu, (nu, owners)) in &roots {
                let map = make_map(face.p, face.q, Mu::Value(mu.clone()))?;
                let (child_y, child_parts) = transform_parts(&parts, owners, &map)?;
                let top: u64 = child_y
                    + child_parts
                        .iter()
                        .map(|p| p.mult * top_beta(&p.gens))
                        .sum::<u64>();
                if top > *nu {
                    return Err(NewtonError::CrossCheckFailure(format!(
                        "after {map} at {} the new diagram starts at height {top} > ν = {nu}",
                        path_label(path)
                    )));
                }
                let mut child_path = path.to_vec();
                child_path.push(map.clone());
                let out = self.explore(&child_path, vertex_n, child_y, child_parts)?;
                children.push((map, out));
            }
            records.push(FaceRecord {
                face: face.clone(),
                d,
                face_poly: face_poly.monic(),
                roots: roots.iter().map(|(r, v)| (r.clone(), v.0)).collect(),
                residual_degree,
            });
            outs.push(FaceOut {
                p: face.p,
                m: face.q,
                n: vertex_n,
                d,
                children,
            });
        }
        let height_identity = height_sum == height(&joint);
        if !height_identity {
            return Err(NewtonError::CrossCheckFailure(format!(
                "height identity fails at {}",
                path_label(path)
            )));
        }
        self.nodes.push(NodeRecord {
            path: path.to_vec(),
            anchor,
            diagram: NewtonDiagram {
                vertices: joint
                    .vertices
                    .iter()
                    .map(|&(a, b)| (a + anchor, b))
                    .collect(),
            },
            faces: records,
            height_identity,
        });
        Ok(NodeOut::Poly { y, faces: outs })
    }
}

fn top_beta(gens: &[BPoly]) -> u64 {
    diagram_of_polys(gens).vertices.first().map_or(0, |v| v.1)
}

/// Minkowski sum of the part diagrams, each scaled by its multiplicity,
/// shifted by the `y`-content.
fn joint_diagram(parts: &[Part], diagrams: &[NewtonDiagram], y: u64) -> NewtonDiagram {
    let mut start: Point = (0, y);
    let mut edges: Vec<(u64, u64, u64)> = Vec::new();
    for (part, diag) in parts.iter().zip(diagrams) {
        let top = diag.vertices[0];
        start.0 += part.mult * top.0;
        start.1 += part.mult * top.1;
        for f in faces(diag) {
            edges.push((f.p, f.q, f.steps() * part.mult));
        }
    }
    edges.sort_by(|a, b| {
        (u128::from(b.0) * u128::from(a.1)).cmp(&(u128::from(a.0) * u128::from(b.1)))
    });
    let mut pts = vec![start];
    let mut cur = start;
    for (p, q, steps) in edges {
        cur = (cur.0 + q * steps, cur.1 - p * steps);
        pts.push(cur);
    }
    diagram_of_points(&pts)
}

/// Images of the parts owning the root of `map`, with the `y`-content they
/// acquire split off and parts that became units dropped.
fn transform_parts(parts: &[Part], owners: &[usize], map: &NewtonMap) -> Result<(u64, Vec<Part>)> {
    let mut y = 0;
    let mut out = Vec::new();
    for &i in owners {
        let part = &parts[i];
        let expected = part
            .gens
            .iter()
            .map(|g| weighted_order(g, map.p, map.q))
            .min()
            .expect("nonempty part");
        if part.ideal {
            let ideal = IdealGens::new(part.gens.clone())?;
            let (n0, image) = apply_map_ideal(&ideal, map);
            if n0 != expected {
                return Err(NewtonError::CrossCheckFailure(format!(
                    "x-order {n0} of the image under {map} differs from the face level {expected}"
                )));
            }
            y += u64::from(image.content().1);
            if image.generators().iter().all(BPoly::vanishes_at_origin) {
                out.push(Part {
                    gens: image.generators().iter().map(BPoly::normalized).collect(),
                    mult: 1,
                    ideal: true,
                });
            }
        } else {
            let (k, g1) = apply_map_poly(&part.gens[0], map);
            if k != expected {
                return Err(NewtonError::CrossCheckFailure(format!(
                    "x-order {k} of the image under {map} differs from the face level {expected}"
                )));
            }
            let l = g1.y_content();
            y += part.mult * u64::from(l);
            let g2 = g1.div_monomial(0, l);
            if g2.vanishes_at_origin() {
                out.push(Part {
                    gens: vec![g2.normalized()],
                    mult: part.mult,
                    ideal: false,
                });
            }
        }
    }
    Ok((y, out))
}

fn collect_process(
    out: &NodeOut,
    path: &[NewtonMap],
    entries: &mut Vec<ProcessEntry>,
    y_content: &mut u64,
) {
    let root = path.is_empty();
    let push_y = |l: u64, entries: &mut Vec<ProcessEntry>, y_content: &mut u64| {
        if root {
            *y_content = l;
        } else if l > 0 {
            entries.push(ProcessEntry {
                maps: path.to_vec(),
                terminal: Terminal::y_branch(l),
            });
        }
    };
    match out {
        NodeOut::Y(l) => push_y(*l, entries, y_content),
        NodeOut::Branch { cert, nu } => entries.push(ProcessEntry {
            maps: path.to_vec(),
            terminal: Terminal::Branch {
                certificate: cert.clone(),
                nu: *nu,
            },
        }),
        NodeOut::Poly { y, faces } => {
            push_y(*y, entries, y_content);
            for f in faces {
                let generic = make_map(f.p, f.m, Mu::Generic).expect("face data is coprime");
                if f.d > 0 {
                    let mut maps = path.to_vec();
                    maps.push(generic);
                    entries.push(ProcessEntry {
                        maps,
                        terminal: Terminal::Dicritical { d: f.d },
                    });
                }
                for (map, child) in &f.children {
                    let mut maps = path.to_vec();
                    maps.push(map.clone());
                    collect_process(child, &maps, entries, y_content);
                }
            }
        }
    }
}

fn column_of(out: &NodeOut, path: Vec<NewtonMap>) -> ColumnSpec {
    let NodeOut::Poly { y, faces } = out else {
        unreachable!("columns come from polygon nodes")
    };
    ColumnSpec {
        y: *y,
        faces: faces
            .iter()
            .map(|f| FaceSpec {
                p: f.p,
                m: f.m,
                d: f.d,
                n: Some(f.n),
                children: f
                    .children
                    .iter()
                    .map(|(map, child)| match child {
                        NodeOut::Y(l) => ChildSpec::Leaf {
                            map: map.clone(),
                            mult: *l,
                        },
                        NodeOut::Branch { nu, .. } => ChildSpec::Leaf {
                            map: map.clone(),
                            mult: *nu,
                        },
                        NodeOut::Poly { .. } => {
                            let mut p = path.clone();
                            p.push(map.clone());
                            ChildSpec::Column(column_of(child, p))
                        }
                    })
                    .collect(),
            })
            .collect(),
        path,
    }
}

/// Splits `I` into content, curve factors through the origin, and the
/// finite-codimension cofactor.
pub fn principal_split(i: &IdealGens) -> Result<PrincipalSplit> {
    if let Some(g) = i.full_generators().iter().find(|g| !g.vanishes_at_origin()) {
        return Err(NewtonError::TrivialIdeal(g.to_string()));
    }
    let (a, b) = i.content();
    let gens = i.generators();
    let g = gcd_many(gens);
    let curves: Vec<(BPoly, u64)> = squarefree_decompose(&g)
        .into_iter()
        .filter(|(f, _)| f.vanishes_at_origin())
        .map(|(f, m)| (f.normalized(), u64::from(m)))
        .collect();
    let cofactors: Vec<BPoly> = gens
        .iter()
        .map(|f| f.div_exact(&g).expect("gcd divides").normalized())
        .collect();
    let cofactor = cofactors
        .iter()
        .all(BPoly::vanishes_at_origin)
        .then(|| IdealGens::new(cofactors))
        .transpose()?;
    Ok(PrincipalSplit {
        x: u64::from(a),
        y: u64::from(b),
        curves,
        cofactor,
    })
}

/// Runs the Newton algorithm on `I`.
pub fn run(i: &IdealGens, cfg: RunConfig) -> Result<AnalysisResult> {
    let split = principal_split(i)?;
    let mut parts: Vec<Part> = split
        .curves
        .iter()
        .map(|(g, m)| Part {
            gens: vec![g.clone()],
            mult: *m,
            ideal: false,
        })
        .collect();
    if let Some(c) = &split.cofactor {
        parts.push(Part {
            gens: c.generators().to_vec(),
            mult: 1,
            ideal: true,
        });
    }
    let mut driver = Driver {
        cfg,
        nodes: Vec::new(),
        unresolved: Vec::new(),
    };
    let root = driver.explore(&[], split.x, split.y, parts)?;

    let mut entries = Vec::new();
    let mut y_content = 0;
    collect_process(&root, &[], &mut entries, &mut y_content);
    let mut process = NewtonProcess {
        x_content: split.x,
        y_content,
        entries,
    };
    process.canonicalize();

    let spec = TreeSpec {
        x_content: split.x,
        root: match &root {
            NodeOut::Y(l) => RootSpec::Bare { bottom: *l },
            NodeOut::Branch { nu, .. } => RootSpec::Bare { bottom: *nu },
            NodeOut::Poly { .. } => RootSpec::Column(column_of(&root, Vec::new())),
        },
    };
    let (tree, layout) = build_tree(&spec);
    if let Some(v) = tree.first_n_violation() {
        return Err(NewtonError::CrossCheckFailure(format!(
            "decoration identity fails at vertex {v}"
        )));
    }
    if !tree.check_gluing() {
        return Err(NewtonError::CrossCheckFailure(
            "gluing relation fails".into(),
        ));
    }
    if driver.unresolved.is_empty() && !reconstruct_tree(&process)?.isomorphic(&tree) {
        return Err(NewtonError::CrossCheckFailure(
            "tree rebuilt from the process differs from the computed tree".into(),
        ));
    }
    let depth = tree.width();
    if process.depth() > depth {
        return Err(NewtonError::CrossCheckFailure(
            "process entry longer than the depth".into(),
        ));
    }
    let cofactor_analysis = match (&split.cofactor, split.is_finite_codim()) {
        (Some(c), false) => Some(Box::new(run(c, cfg)?)),
        _ => None,
    };
    driver.nodes.reverse();
    Ok(AnalysisResult {
        content: (split.x, split.y),
        tree,
        layout,
        process,
        depth,
        nodes: driver.nodes,
        split,
        unresolved: driver.unresolved,
        cofactor_analysis,
    })
}

/// Depth of the Newton algorithm of `I`.
pub fn depth(i: &IdealGens, cfg: RunConfig) -> Result<usize> {
    Ok(run(i, cfg)?.depth)
}

/// Whether `I` is non-degenerate, that is of depth at most one.
pub fn is_nondegenerate(i: &IdealGens, cfg: RunConfig) -> Result<bool> {
    Ok(depth(i, cfg)? <= 1)
}

/// For an ideal of finite codimension: non-degenerate exactly when every face
/// polynomial of its diagram is constant.
pub fn nondegenerate_finite_codim_fast(i: &IdealGens) -> Result<bool> {
    if i.content() != (0, 0)
        || !gcd_many(i.generators()).constant_term().is_positive()
            && !gcd_many(i.generators()).is_constant()
        || !i.generators().iter().all(BPoly::vanishes_at_origin)
    {
        return Err(NewtonError::NotFiniteCodim);
    }
    let gens = i.generators();
    let g = gcd_many(gens);
    if !g.is_constant() {
        return Err(NewtonError::NotFiniteCodim);
    }
    let diag = diagram_of_polys(gens);
    Ok(faces(&diag)
        .iter()
        .all(|f| initial_decomposition(gens, f).face_poly.is_constant()))
}
