//! Newton diagrams, faces, initial ideals and polygon areas.
//!
//! The Newton diagram of an ideal is the convex hull of the union of the
//! generator supports plus the positive quadrant. Its compact boundary is a
//! chain of faces `pα + qβ = N` with `gcd(p, q) = 1`, listed top to bottom.
//!
//! On a face running from `(α_s, β_s)` to `(α_e, β_e)` with `D = δ − 1`
//! lattice steps, every monomial has the form
//! `x^{α_s} y^{β_e} (x^q)^t (y^p)^{D−t}`. The face terms of a generator are
//! therefore a homogeneous form of degree `D` in `X = x^q`, `Y = y^p`, which
//! is stored through its dehomogenization at `X = 1`. The monic gcd of these
//! univariate shadows is the face polynomial `F(1, Y)`, and the dicritical
//! degree is `d = D − deg F`.

use algebra_core::{rational_roots, BPoly, IdealGens, Rat, UPoly};
use serde::{Deserialize, Serialize};

use crate::error::{NewtonError, Result};

/// A lattice point `(α, β)`.
pub type Point = (u64, u64);

/// Vertices of a Newton diagram, strictly increasing in `α` and strictly
/// decreasing in `β`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NewtonDiagram {
    pub vertices: Vec<Point>,
}

/// A segment of a Newton polygon with supporting line `pα + qβ = N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Face {
    pub p: u64,
    pub q: u64,
    #[serde(rename = "N")]
    pub n: u64,
    /// Upper end of the segment.
    pub origin: Point,
    /// Lower end of the segment.
    pub end: Point,
    /// Number of lattice points on the closed segment.
    pub delta: u64,
}

impl Face {
    /// Number of lattice steps `δ − 1` along the segment.
    pub fn steps(&self) -> u64 {
        self.delta - 1
    }

    /// Value of `pα + qβ` at a point.
    pub fn level(&self, pt: Point) -> u64 {
        self.p * pt.0 + self.q * pt.1
    }
}

/// Initial ideal of an ideal along a face, written as
/// `x^a y^b F(x^q, y^p) · (k_1(x^q, y^p), …)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialDecomposition {
    pub a: u64,
    pub b: u64,
    /// Dehomogenized face polynomial `F(1, X)`, monic.
    pub face_poly: UPoly,
    /// Dehomogenized cofactors `k_i(1, X)`, one per generator, zero for a
    /// generator without terms on the face.
    pub k_list: Vec<UPoly>,
    /// Common degree of the cofactors; zero exactly in the principal case.
    pub d: u64,
}

impl InitialDecomposition {
    /// Rebuilds the face terms of generator `i` as
    /// `x^a y^b F(x^q, y^p) k_i(x^q, y^p)`.
    pub fn reconstruct(&self, face: &Face, i: usize) -> BPoly {
        let f_hom = homogenize(&self.face_poly);
        let k = &self.k_list[i];
        if k.is_zero() {
            return BPoly::zero();
        }
        let k_hom = homogenize_to(k, self.d as usize);
        let prod = f_hom.mul(&k_hom);
        let mut out = BPoly::zero();
        for (&(s, t), c) in prod.terms() {
            let a = self.a + face.q * u64::from(s);
            let b = self.b + face.p * u64::from(t);
            out.add_term((to_u32(a), to_u32(b)), c);
        }
        out
    }
}

fn to_u32(v: u64) -> u32 {
    u32::try_from(v).expect("exponent fits in u32")
}

/// Homogeneous form `X^{deg u} u(Y/X)` as a polynomial in `(X, Y)`.
fn homogenize(u: &UPoly) -> BPoly {
    homogenize_to(u, u.degree().unwrap_or(0))
}

fn homogenize_to(u: &UPoly, deg: usize) -> BPoly {
    let mut out = BPoly::zero();
    for (j, c) in u.coeffs().iter().enumerate() {
        if !c.is_zero() {
            out.add_term(((deg - j) as u32, j as u32), c);
        }
    }
    out
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Lower-left convex chain of a finite point set.
pub fn diagram_of_points(points: &[Point]) -> NewtonDiagram {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    let mut stair: Vec<Point> = Vec::new();
    for p in pts {
        if stair.last().is_none_or(|l| p.1 < l.1) {
            stair.push(p);
        }
    }
    let mut hull: Vec<Point> = Vec::new();
    for p in stair {
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let a = hull[hull.len() - 1];
            let cross = (a.0 as i128 - o.0 as i128) * (p.1 as i128 - o.1 as i128)
                - (a.1 as i128 - o.1 as i128) * (p.0 as i128 - o.0 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    NewtonDiagram { vertices: hull }
}

/// Union of the supports of a list of polynomials.
pub fn support_points(gens: &[BPoly]) -> Vec<Point> {
    gens.iter()
        .flat_map(|g| g.terms().map(|(&(a, b), _)| (u64::from(a), u64::from(b))))
        .collect()
}

/// Diagram of the ideal generated by a list of polynomials.
pub fn diagram_of_polys(gens: &[BPoly]) -> NewtonDiagram {
    diagram_of_points(&support_points(gens))
}

/// Diagram of an ideal, monomial content included.
pub fn diagram(i: &IdealGens) -> NewtonDiagram {
    diagram_of_polys(&i.full_generators())
}

/// Faces of a diagram, top to bottom.
pub fn faces(diag: &NewtonDiagram) -> Vec<Face> {
    diag.vertices
        .windows(2)
        .map(|w| face_between(w[0], w[1]))
        .collect()
}

fn face_between(origin: Point, end: Point) -> Face {
    let da = end.0 - origin.0;
    let db = origin.1 - end.1;
    let g = gcd_u64(da, db);
    let (p, q) = (db / g, da / g);
    Face {
        p,
        q,
        n: p * origin.0 + q * origin.1,
        origin,
        end,
        delta: g + 1,
    }
}

/// Height `β_0 − β_m` of a diagram.
pub fn height(diag: &NewtonDiagram) -> u64 {
    match (diag.vertices.first(), diag.vertices.last()) {
        (Some(f), Some(l)) => f.1 - l.1,
        _ => 0,
    }
}

/// Minimum of `pα + qβ` over the support of `f`.
pub fn weighted_order(f: &BPoly, p: u64, q: u64) -> u64 {
    f.terms()
        .map(|(&(a, b), _)| p * u64::from(a) + q * u64::from(b))
        .min()
        .expect("nonzero polynomial")
}

/// Univariate shadow `Σ c_t Y^{D−t}` of the face terms of `g`.
fn face_shadow(g: &BPoly, face: &Face) -> UPoly {
    let steps = face.steps() as usize;
    let mut coeffs = vec![Rat::zero(); steps + 1];
    for (&(a, b), c) in g.terms() {
        let pt = (u64::from(a), u64::from(b));
        if face.level(pt) == face.n {
            let t = ((pt.0 - face.origin.0) / face.q) as usize;
            coeffs[steps - t] = c.clone();
        }
    }
    UPoly::new(coeffs)
}

/// Initial decomposition for a face already known to belong to the diagram
/// of `gens`.
pub fn initial_decomposition(gens: &[BPoly], face: &Face) -> InitialDecomposition {
    let shadows: Vec<UPoly> = gens.iter().map(|g| face_shadow(g, face)).collect();
    let mut f = UPoly::zero();
    for s in &shadows {
        f = f.gcd(s);
    }
    let f = f.monic();
    let deg_f = f.degree().expect("some generator meets the face") as u64;
    let k_list = shadows
        .iter()
        .map(|s| s.div_exact(&f).expect("gcd divides"))
        .collect();
    InitialDecomposition {
        a: face.origin.0,
        b: face.end.1,
        face_poly: f,
        k_list,
        d: face.steps() - deg_f,
    }
}

/// Initial ideal of `I` along `S`; generators are taken with their content.
pub fn initial_ideal(i: &IdealGens, s: &Face) -> Result<InitialDecomposition> {
    let gens = i.full_generators();
    if !faces(&diagram_of_polys(&gens)).contains(s) {
        return Err(NewtonError::FaceMismatch(format!(
            "{}α+{}β={} is not a face",
            s.p, s.q, s.n
        )));
    }
    Ok(initial_decomposition(&gens, s))
}

/// Face description used in diagnostics.
pub fn face_label(face: &Face) -> String {
    format!("{}α+{}β={}", face.p, face.q, face.n)
}

/// Checks `h = Σ_S p_S (d_S + Σ ν_{S,i})` on the diagram of `I`. The roots
/// are counted through `rational_roots`; an irrational residual contributes
/// its degree, or is rejected when `strict` is set.
pub fn check_height_formula(i: &IdealGens, strict: bool) -> Result<bool> {
    let gens = i.full_generators();
    let diag = diagram_of_polys(&gens);
    let mut total = 0;
    for face in faces(&diag) {
        let dec = initial_decomposition(&gens, &face);
        let (roots, residual) = rational_roots(&dec.face_poly);
        let residual_deg = residual.degree().unwrap_or(0) as u64;
        if strict && residual_deg > 0 {
            return Err(NewtonError::GroundFieldInsufficient {
                face: face_label(&face),
                poly: dec.face_poly.to_string(),
            });
        }
        let nu: u64 = roots.iter().map(|(_, m)| u64::from(*m)).sum();
        total += face.p * (dec.d + nu + residual_deg);
    }
    Ok(total == height(&diag))
}

/// Twice the area of the region between the axes and a diagram that meets
/// both axes.
pub fn polygon_area2(diag: &NewtonDiagram) -> Result<u64> {
    polygon_area2_anchored(diag, 0)
}

/// Twice the area between the diagram, the line `α = anchor` and the
/// `α`-axis: `Σ_S (N_S − anchor·p_S)(δ_S − 1)`. The diagram must start on the
/// line `α = anchor` and end on the `α`-axis.
pub fn polygon_area2_anchored(diag: &NewtonDiagram, anchor: u64) -> Result<u64> {
    if diag.vertices.len() <= 1 {
        return Ok(0);
    }
    let first = diag.vertices[0];
    let last = diag.vertices[diag.vertices.len() - 1];
    if first.0 != anchor || last.1 != 0 {
        return Err(NewtonError::UnboundedRegion);
    }
    Ok(faces(diag)
        .iter()
        .map(|f| (f.n - anchor * f.p) * f.steps())
        .sum())
}

#[derive(Serialize)]
struct FaceJson {
    p: u64,
    q: u64,
    #[serde(rename = "N")]
    n: u64,
    delta: u64,
    d: u64,
}

#[derive(Serialize)]
struct DiagramJson {
    vertices: Vec<[u64; 2]>,
    faces: Vec<FaceJson>,
}

/// JSON description of the diagram of `I` with its faces and dicritical
/// degrees.
pub fn diagram_json(i: &IdealGens) -> String {
    let gens = i.full_generators();
    let diag = diagram_of_polys(&gens);
    let out = DiagramJson {
        vertices: diag.vertices.iter().map(|&(a, b)| [a, b]).collect(),
        faces: faces(&diag)
            .into_iter()
            .map(|f| {
                let d = initial_decomposition(&gens, &f).d;
                FaceJson {
                    p: f.p,
                    q: f.q,
                    n: f.n,
                    delta: f.delta,
                    d,
                }
            })
            .collect(),
    };
    serde_json::to_string(&out).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(gens: &[&str]) -> IdealGens {
        IdealGens::from_strs(gens).unwrap()
    }

    fn example2() -> IdealGens {
        ideal(&["x^3*y", "x^6+y^4"])
    }

    #[test]
    fn diagram_examples() {
        assert_eq!(diagram(&example2()).vertices, vec![(0, 4), (3, 1), (6, 0)]);
        assert_eq!(diagram(&ideal(&["x^5"])).vertices, vec![(5, 0)]);
        assert_eq!(
            diagram(&ideal(&["x^2", "x*y^4", "y^5"])).vertices,
            vec![(0, 5), (2, 0)]
        );
    }

    #[test]
    fn faces_examples() {
        let f = faces(&diagram(&example2()));
        let pqn: Vec<_> = f.iter().map(|f| (f.p, f.q, f.n)).collect();
        assert_eq!(pqn, vec![(1, 1, 4), (1, 3, 6)]);
        let ex3 = ideal(&["y^2*((x^2+y^3)^2+x*y^5)*(x^2-y^3)", "x^8*y+x^12"]);
        let pqn: Vec<_> = faces(&diagram(&ex3))
            .iter()
            .map(|f| (f.p, f.q, f.n))
            .collect();
        assert_eq!(pqn, vec![(3, 2, 22), (1, 2, 10), (1, 4, 12)]);
        assert!(faces(&diagram(&ideal(&["x^3*y^2"]))).is_empty());
    }

    #[test]
    fn height_examples() {
        assert_eq!(height(&diagram(&example2())), 4);
        assert_eq!(height(&diagram(&ideal(&["x^2"]))), 0);
        let ex1 = ideal(&["y^4*(y+x)*(y^2-3*x)", "((y+x)^3+x^8)*(y^2-3*x)"]);
        assert_eq!(height(&diagram(&ex1)), 5);
        assert!(check_height_formula(&ex1, true).unwrap());
        assert!(check_height_formula(&example2(), true).unwrap());
        assert!(check_height_formula(&ideal(&["x^2*y"]), true).unwrap());
    }

    #[test]
    fn initial_ideal_examples() {
        let i = example2();
        let s1 = faces(&diagram(&i))[0].clone();
        let dec = initial_ideal(&i, &s1).unwrap();
        assert_eq!((dec.a, dec.b, dec.d), (0, 1, 3));
        assert!(dec.face_poly.is_constant());

        let ex3 = ideal(&["y^2*((x^2+y^3)^2+x*y^5)*(x^2-y^3)", "x^8*y+x^12"]);
        let s1 = faces(&diagram(&ex3))[0].clone();
        let dec = initial_ideal(&ex3, &s1).unwrap();
        assert_eq!(dec.d, 0);
        let expected = UPoly::from_ints(&[1, 1])
            .pow(2)
            .mul(&UPoly::from_ints(&[-1, 1]));
        assert_eq!(dec.face_poly, expected);

        let ex1 = ideal(&["y^4*(y+x)*(y^2-3*x)", "((y+x)^3+x^8)*(y^2-3*x)"]);
        let s2 = faces(&diagram(&ex1))[1].clone();
        let dec = initial_ideal(&ex1, &s2).unwrap();
        assert_eq!((dec.a, dec.b, dec.d), (1, 0, 0));
        assert_eq!(dec.face_poly, UPoly::from_ints(&[1, 1]).pow(3));
        for k in 0..2 {
            let rebuilt = dec.reconstruct(&s2, k);
            let g = &ex1.full_generators()[k];
            let on_face: BPoly = BPoly::from_terms(
                g.terms()
                    .filter(|(&(a, b), _)| s2.level((a.into(), b.into())) == s2.n)
                    .map(|(&e, c)| (e, c.clone())),
            );
            assert_eq!(rebuilt, on_face);
        }
        let bogus = Face {
            p: 1,
            q: 1,
            n: 9,
            origin: (0, 9),
            end: (9, 0),
            delta: 10,
        };
        assert!(initial_ideal(&ex1, &bogus).is_err());
    }

    #[test]
    fn areas() {
        assert_eq!(polygon_area2(&diagram(&example2())).unwrap(), 18);
        let ex3 = ideal(&["y^2*((x^2+y^3)^2+x*y^5)*(x^2-y^3)", "x^8*y+x^12"]);
        assert_eq!(polygon_area2(&diagram(&ex3)).unwrap(), 88);
        assert_eq!(polygon_area2(&diagram(&ideal(&["x^3"]))).unwrap(), 0);
        assert_eq!(
            polygon_area2(&diagram(&ideal(&["x*y^2", "x^3*y"]))),
            Err(NewtonError::UnboundedRegion)
        );
        let shifted = NewtonDiagram {
            vertices: vec![(4, 2), (6, 0)],
        };
        assert_eq!(polygon_area2_anchored(&shifted, 4).unwrap(), 4);
    }

    #[test]
    fn json_layout() {
        assert_eq!(
            diagram_json(&example2()),
            r#"{"vertices":[[0,4],[3,1],[6,0]],"faces":[{"p":1,"q":1,"N":4,"delta":4,"d":3},{"p":1,"q":3,"N":6,"delta":2,"d":1}]}"#
        );
    }
}
