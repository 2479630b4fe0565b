//! Decorated Newton trees.
//!
//! Every Newton polygon met by the algorithm becomes a column of vertices,
//! one per face, joined by vertical edges. A vertex `v` carries `(N_v, d_v)`
//! and two edge decorations: `q_v` on the edge above it and `p_v` on the
//! edge below it. The column of a node reached through the root of a face is
//! hung from that face's vertex by a horizontal edge, which carries `1` at
//! the parent. Before gluing, a face of the node's own polygon has decorations
//! `(m̃, p)`; after gluing to the preceding vertex `v₀`, the upper decoration
//! becomes `q = p₀ q₀ p + m̃`.
//!
//! The root column has a top arrow carrying the `x`-content. Every column has
//! a bottom arrow carrying the `y`-content of its node (possibly zero), and a
//! depth-zero child node becomes a horizontal arrow at its parent vertex.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{NewtonError, Result};
use crate::maps::NewtonMap;

/// Kind of an edge between two vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Vertical,
    Horizontal,
}

/// Kind of an arrow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrowKind {
    /// Top of the first column; multiplicity is the `x`-content.
    Top,
    /// Bottom of a column; multiplicity is the node's `y`-content.
    Bottom,
    /// Horizontal arrow for a branch reaching depth zero.
    Branch,
}

/// A vertex with its decorations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    #[serde(rename = "N")]
    pub n: u64,
    pub d: u64,
    /// Decoration on the edge above the vertex, after gluing.
    pub q: u64,
    /// Decoration on the edge below the vertex.
    pub p: u64,
    /// Decoration `m̃` above the vertex before gluing.
    pub pre_glue_m: u64,
    /// Vertex the column of this vertex hangs from.
    pub preceding: Option<usize>,
}

/// An edge from an upper (or parent) vertex to a lower (or child) vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub kind: EdgeKind,
}

/// An arrow; `at` is `None` only in the vertex-free tree of a depth-zero
/// ideal, where the top and bottom arrows share a single edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub at: Option<usize>,
    pub mult: u64,
    pub decoration: Option<u64>,
    pub kind: ArrowKind,
}

/// A decorated Newton tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonTree {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub arrows: Vec<Arrow>,
}

/// Where a vertex comes from: the maps reaching its column and the data
/// `(p, m̃)` of its face in that column's own polygon.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexInfo {
    pub path: Vec<NewtonMap>,
    pub p: u64,
    pub m: u64,
}

/// Identifies an arrow by the node it belongs to: the top arrow by the empty
/// path, a bottom arrow by its column path, a branch arrow by the path of the
/// depth-zero node it stands for.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArrowKey {
    pub path: Vec<NewtonMap>,
    pub kind: ArrowKind,
}

/// Provenance of the vertices and arrows of a built tree, indexed like the
/// tree's own lists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeLayout {
    pub vertices: Vec<VertexInfo>,
    pub arrows: Vec<ArrowKey>,
}

impl TreeLayout {
    /// Vertex with the given provenance.
    pub fn find_vertex(&self, info: &VertexInfo) -> Option<usize> {
        self.vertices.iter().position(|v| v == info)
    }

    /// Arrow with the given key.
    pub fn find_arrow(&self, key: &ArrowKey) -> Option<usize> {
        self.arrows.iter().position(|a| a == key)
    }
}

/// Description of a tree column by column, from which trees are built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeSpec {
    pub x_content: u64,
    pub root: RootSpec,
}

/// The first column, or a vertex-free tree for a depth-zero ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootSpec {
    Column(ColumnSpec),
    Bare { bottom: u64 },
}

/// One column: the faces of a node's polygon, top to bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnSpec {
    pub path: Vec<NewtonMap>,
    pub y: u64,
    pub faces: Vec<FaceSpec>,
}

/// One face of a column with its children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSpec {
    pub p: u64,
    pub m: u64,
    pub d: u64,
    /// Known vertex value, or `None` to compute it from the decoration
    /// identity.
    pub n: Option<u64>,
    pub children: Vec<ChildSpec>,
}

/// A root of a face: a depth-zero arrow or a new column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChildSpec {
    Leaf { map: NewtonMap, mult: u64 },
    Column(ColumnSpec),
}

struct Builder {
    tree: NewtonTree,
    layout: TreeLayout,
    given: Vec<Option<u64>>,
    x_content: u64,
}

impl Builder {
    fn arrow(&mut self, at: Option<usize>, mult: u64, kind: ArrowKind, key: ArrowKey) {
        let decoration = (kind != ArrowKind::Branch).then_some(mult);
        self.tree.arrows.push(Arrow {
            at,
            mult,
            decoration,
            kind,
        });
        self.layout.arrows.push(key);
    }

    fn column(&mut self, col: &ColumnSpec, parent: Option<usize>) {
        let mut ids = Vec::with_capacity(col.faces.len());
        let mut prev: Option<usize> = None;
        for face in &col.faces {
            let id = self.tree.vertices.len();
            let q = match parent {
                Some(par) => {
                    let pv = &self.tree.vertices[par];
                    pv.p * pv.q * face.p + face.m
                }
                None => face.m,
            };
            self.tree.vertices.push(Vertex {
                id,
                n: 0,
                d: face.d,
                q,
                p: face.p,
                pre_glue_m: face.m,
                preceding: parent,
            });
            self.given.push(face.n);
            self.layout.vertices.push(VertexInfo {
                path: col.path.clone(),
                p: face.p,
                m: face.m,
            });
            match (prev, parent) {
                (Some(pr), _) => self.tree.edges.push(Edge {
                    from: pr,
                    to: id,
                    kind: EdgeKind::Vertical,
                }),
                (None, Some(par)) => self.tree.edges.push(Edge {
                    from: par,
                    to: id,
                    kind: EdgeKind::Horizontal,
                }),
                (None, None) => {
                    let x = self.x_content;
                    self.arrow(
                        Some(id),
                        x,
                        ArrowKind::Top,
                        ArrowKey {
                            path: Vec::new(),
                            kind: ArrowKind::Top,
                        },
                    );
                }
            }
            prev = Some(id);
            ids.push(id);
        }
        self.arrow(
            prev,
            col.y,
            ArrowKind::Bottom,
            ArrowKey {
                path: col.path.clone(),
                kind: ArrowKind::Bottom,
            },
        );
        for (face, &id) in col.faces.iter().zip(&ids) {
            for child in &face.children {
                match child {
                    ChildSpec::Leaf { map, mult } => {
                        let mut path = col.path.clone();
                        path.push(map.clone());
                        self.arrow(
                            Some(id),
                            *mult,
                            ArrowKind::Branch,
                            ArrowKey {
                                path,
                                kind: ArrowKind::Branch,
                            },
                        );
                    }
                    ChildSpec::Column(c) => self.column(c, Some(id)),
                }
            }
        }
    }
}

/// Builds a tree from its column description. Vertex values missing from the
/// description are computed from the decoration identity.
pub fn build_tree(spec: &TreeSpec) -> (NewtonTree, TreeLayout) {
    let mut b = Builder {
        tree: NewtonTree {
            vertices: Vec::new(),
            edges: Vec::new(),
            arrows: Vec::new(),
        },
        layout: TreeLayout::default(),
        given: Vec::new(),
        x_content: spec.x_content,
    };
    match &spec.root {
        RootSpec::Column(c) => b.column(c, None),
        RootSpec::Bare { bottom } => {
            b.arrow(
                None,
                spec.x_content,
                ArrowKind::Top,
                ArrowKey {
                    path: Vec::new(),
                    kind: ArrowKind::Top,
                },
            );
            b.arrow(
                None,
                *bottom,
                ArrowKind::Bottom,
                ArrowKey {
                    path: Vec::new(),
                    kind: ArrowKind::Bottom,
                },
            );
        }
    }
    let Builder {
        mut tree,
        layout,
        given,
        ..
    } = b;
    let computed: Vec<u64> = (0..tree.vertices.len())
        .map(|v| tree.decoration_sum(v))
        .collect();
    for (v, vert) in tree.vertices.iter_mut().enumerate() {
        vert.n = given[v].unwrap_or(computed[v]);
    }
    (tree, layout)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Down,
    Side,
}

/// Target of a path product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Vertex(usize),
    Arrow(usize),
}

impl NewtonTree {
    /// Tree parent of each vertex: the vertex above it in its column, or the
    /// vertex its column hangs from.
    fn parents(&self) -> Vec<Option<(usize, Slot)>> {
        let mut parent = vec![None; self.vertices.len()];
        for e in &self.edges {
            let slot = match e.kind {
                EdgeKind::Vertical => Slot::Down,
                EdgeKind::Horizontal => Slot::Side,
            };
            parent[e.to] = Some((e.from, slot));
        }
        parent
    }

    fn ancestors(parent: &[Option<(usize, Slot)>], v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut cur = v;
        while let Some((w, _)) = parent[cur] {
            out.push(w);
            cur = w;
        }
        out
    }

    /// Product of the decorations adjacent to the path from `v` to `target`
    /// on edges leaving the path. For `target = v` this is `q_v p_v`.
    pub fn rho_path(&self, v: usize, target: Target) -> u64 {
        let parent = self.parents();
        let (t, extra) = match target {
            Target::Vertex(t) => (t, None),
            Target::Arrow(a) => {
                let arrow = &self.arrows[a];
                match arrow.at {
                    Some(t) => (t, Some(arrow.kind)),
                    None => return 1,
                }
            }
        };
        // up/down slot usage per vertex on the path
        let mut used: HashMap<usize, (bool, bool)> = HashMap::new();
        let av = Self::ancestors(&parent, v);
        let at = Self::ancestors(&parent, t);
        let lca = *av
            .iter()
            .find(|x| at.contains(x))
            .expect("vertices of one tree share the root");
        for chain in [&av, &at] {
            for &u in chain.iter() {
                used.entry(u).or_insert((false, false));
                if u == lca {
                    break;
                }
                let (w, slot) = parent[u].expect("below the lca");
                used.get_mut(&u).expect("inserted").0 = true;
                let entry = used.entry(w).or_insert((false, false));
                if slot == Slot::Down {
                    entry.1 = true;
                }
            }
        }
        match extra {
            Some(ArrowKind::Top) => used.get_mut(&t).expect("on path").0 = true,
            Some(ArrowKind::Bottom) => used.get_mut(&t).expect("on path").1 = true,
            _ => {}
        }
        used.iter()
            .map(|(&u, &(up, down))| {
                let vert = &self.vertices[u];
                (if up { 1 } else { vert.q }) * (if down { 1 } else { vert.p })
            })
            .product()
    }

    /// `Σ_arrows ρ_{v,f} m(f) + Σ_{w dicritical} ρ_{v,w} d_w`.
    pub fn decoration_sum(&self, v: usize) -> u64 {
        let arrows: u64 = (0..self.arrows.len())
            .filter(|&a| self.arrows[a].mult > 0)
            .map(|a| self.rho_path(v, Target::Arrow(a)) * self.arrows[a].mult)
            .sum();
        let dicriticals: u64 = self
            .vertices
            .iter()
            .filter(|w| w.d > 0)
            .map(|w| self.rho_path(v, Target::Vertex(w.id)) * w.d)
            .sum();
        arrows + dicriticals
    }

    /// First vertex whose value differs from the decoration identity.
    pub fn first_n_violation(&self) -> Option<usize> {
        (0..self.vertices.len()).find(|&v| self.vertices[v].n != self.decoration_sum(v))
    }

    /// Whether the decoration identity holds at every vertex.
    #[allow(non_snake_case)]
    pub fn check_N_decorations(&self) -> bool {
        self.first_n_violation().is_none()
    }

    /// Whether `q = p₀ q₀ p + m̃` holds at every vertex with a preceding
    /// vertex, and `q = m̃` in the first column.
    pub fn check_gluing(&self) -> bool {
        self.vertices.iter().all(|v| match v.preceding {
            Some(w) => {
                let w = &self.vertices[w];
                v.q == w.p * w.q * v.p + v.pre_glue_m
            }
            None => v.q == v.pre_glue_m,
        })
    }

    /// Chain `S(v)`: the preceding vertices of `v`, outermost first, then `v`.
    pub fn chain(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut cur = v;
        while let Some(w) = self.vertices[cur].preceding {
            out.push(w);
            cur = w;
        }
        out.reverse();
        out
    }

    /// `ρ(v) = min(p_i, q_i) · p_{i−1} ⋯ p_1 · p` over the chain `S(v)`.
    pub fn rho0(&self, v: usize) -> u64 {
        let chain = self.chain(v);
        let first = &self.vertices[chain[0]];
        let rest: u64 = chain[1..].iter().map(|&u| self.vertices[u].p).product();
        first.p.min(first.q) * rest
    }

    /// Dicritical vertices in id order.
    pub fn dicriticals(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .filter(|v| v.d > 0)
            .map(|v| v.id)
            .collect()
    }

    /// Maximum number of columns on a path from the first column; the width
    /// of the tree, equal to the depth of the ideal.
    pub fn width(&self) -> usize {
        let parent = self.parents();
        (0..self.vertices.len())
            .map(|v| {
                Self::ancestors(&parent, v)
                    .windows(2)
                    .filter(|w| parent[w[0]].is_some_and(|(_, s)| s == Slot::Side))
                    .count()
                    + 1
            })
            .max()
            .unwrap_or(0)
    }

    /// Copy with `d_v` arrows of multiplicity one at each dicritical vertex.
    /// The new arrows take over the role of the dicritical degrees, so the
    /// copy has no dicritical vertex and its decorations still satisfy the
    /// decoration identity.
    pub fn generic_curve_tree(&self) -> NewtonTree {
        let mut out = self.clone();
        for v in &self.vertices {
            for _ in 0..v.d {
                out.arrows.push(Arrow {
                    at: Some(v.id),
                    mult: 1,
                    decoration: None,
                    kind: ArrowKind::Branch,
                });
            }
            out.vertices[v.id].d = 0;
        }
        out
    }

    fn column_structure(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        // below[v]: next vertex in the column; side[v]: child column tops
        let mut below = vec![Vec::new(); self.vertices.len()];
        let mut side = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            match e.kind {
                EdgeKind::Vertical => below[e.from].push(e.to),
                EdgeKind::Horizontal => side[e.from].push(e.to),
            }
        }
        (below, side)
    }

    fn column_code(&self, top: usize, below: &[Vec<usize>], side: &[Vec<usize>]) -> String {
        let mut out = String::from("C[");
        let mut cur = Some(top);
        let mut last = top;
        while let Some(v) = cur {
            let vert = &self.vertices[v];
            let mut children: Vec<String> = side[v]
                .iter()
                .map(|&c| self.column_code(c, below, side))
                .collect();
            children.extend(
                self.arrows
                    .iter()
                    .filter(|a| a.at == Some(v) && a.kind == ArrowKind::Branch)
                    .map(|a| format!("a{}", a.mult)),
            );
            children.sort();
            let _ = write!(
                out,
                "({},{},{},{},{};{})",
                vert.n,
                vert.d,
                vert.q,
                vert.p,
                vert.pre_glue_m,
                children.join(",")
            );
            last = v;
            cur = below[v].first().copied();
        }
        let bottom = self
            .arrows
            .iter()
            .find(|a| a.at == Some(last) && a.kind == ArrowKind::Bottom)
            .map_or(0, |a| a.mult);
        let _ = write!(out, "|b{bottom}]");
        out
    }

    /// Canonical text form; two trees are isomorphic as decorated trees
    /// exactly when their canonical forms are equal.
    pub fn canonical_form(&self) -> String {
        let top = self
            .arrows
            .iter()
            .find(|a| a.kind == ArrowKind::Top)
            .map_or(0, |a| a.mult);
        match self
            .arrows
            .iter()
            .find(|a| a.kind == ArrowKind::Top)
            .and_then(|a| a.at)
        {
            Some(root) => {
                let (below, side) = self.column_structure();
                format!("T{top}{}", self.column_code(root, &below, &side))
            }
            None => {
                let bottom = self
                    .arrows
                    .iter()
                    .find(|a| a.kind == ArrowKind::Bottom)
                    .map_or(0, |a| a.mult);
                let mut branches: Vec<u64> = self
                    .arrows
                    .iter()
                    .filter(|a| a.kind == ArrowKind::Branch)
                    .map(|a| a.mult)
                    .collect();
                branches.sort_unstable();
                format!("T{top}|b{bottom}{branches:?}")
            }
        }
    }

    /// Whether two trees are isomorphic as decorated trees.
    pub fn isomorphic(&self, other: &NewtonTree) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// Deterministic JSON serialization.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// Parses the output of [`NewtonTree::to_json`].
    pub fn from_json(text: &str) -> Result<NewtonTree> {
        serde_json::from_str(text).map_err(|e| NewtonError::Malformed(e.to_string()))
    }

    /// Graphviz rendering: vertices labeled `(N,d)`, edge-end decorations as
    /// head and tail labels, arrows as plain terminal nodes labeled with their
    /// multiplicities.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph newton_tree {\n  node [shape=circle];\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  v{} [label=\"({},{})\"];", v.id, v.n, v.d);
        }
        for e in &self.edges {
            let to = &self.vertices[e.to];
            let tail = match e.kind {
                EdgeKind::Vertical => self.vertices[e.from].p,
                EdgeKind::Horizontal => 1,
            };
            let _ = writeln!(
                out,
                "  v{} -> v{} [taillabel=\"{}\", headlabel=\"{}\"];",
                e.from, e.to, tail, to.q
            );
        }
        let mut bare: BTreeMap<ArrowKind, usize> = BTreeMap::new();
        for (i, a) in self.arrows.iter().enumerate() {
            let label = match a.decoration {
                Some(d) => format!("({d})"),
                None => a.mult.to_string(),
            };
            let _ = writeln!(out, "  a{i} [shape=plaintext, label=\"{label}\"];");
            match (a.at, a.kind) {
                (Some(v), ArrowKind::Top) => {
                    let _ = writeln!(
                        out,
                        "  a{i} -> v{v} [dir=back, headlabel=\"{}\"];",
                        self.vertices[v].q
                    );
                }
                (Some(v), ArrowKind::Bottom) => {
                    let _ = writeln!(
                        out,
                        "  v{v} -> a{i} [taillabel=\"{}\"];",
                        self.vertices[v].p
                    );
                }
                (Some(v), ArrowKind::Branch) => {
                    let _ = writeln!(out, "  v{v} -> a{i} [taillabel=\"1\"];");
                }
                (None, kind) => {
                    bare.insert(kind, i);
                }
            }
        }
        if let (Some(t), Some(b)) = (bare.get(&ArrowKind::Top), bare.get(&ArrowKind::Bottom)) {
            let _ = writeln!(out, "  a{t} -> a{b};");
        }
        out.push_str("}\n");
        out
    }
}
