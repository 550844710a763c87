//! Point-line graphs over F_q of girth 8 (quadrangle, 3 coordinates) and
//! girth 12 (hexagon, 5 coordinates), together with their shifted copies.
//!
//! Point `(p1, .., pk)` is adjacent to line `(l1, .., lk)` in the quadrangle
//! graph iff
//!
//! ```text
//! l2 - p2  = l1 p1
//! l3 - 2p3 = -2 l1 p2
//! ```
//!
//! and in the hexagon graph iff additionally
//!
//! ```text
//! l4 - 3p4  = -3 l1 p3
//! 2l5 - 3p5 = 3 l3 p2 - 3 l2 p3 + l4 p1
//! ```
//!
//! A shift adds constants to p2, .., pk inside every equation (p1 is never
//! shifted). Shifted copies are pairwise edge-disjoint and together cover
//! every point-line pair exactly once.
//!
//! Vertex ids: points `0..q^k` then lines `q^k..2q^k`, each block in
//! lexicographic coordinate order (first coordinate most significant).

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::graph::{Class, Graph, GraphBuilder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Geometry {
    /// 3 coordinates, girth 8.
    Quadrangle,
    /// 5 coordinates, girth 12.
    Hexagon,
}

impl Geometry {
    pub fn arity(self) -> usize {
        match self {
            Geometry::Quadrangle => 3,
            Geometry::Hexagon => 5,
        }
    }

    /// Girth of every graph in the family.
    pub fn girth(self) -> u32 {
        match self {
            Geometry::Quadrangle => 8,
            Geometry::Hexagon => 12,
        }
    }

    pub fn from_arity(arity: usize) -> Result<Self> {
        match arity {
            3 => Ok(Geometry::Quadrangle),
            5 => Ok(Geometry::Hexagon),
            _ => Err(Error::InvalidArgument(format!(
                "arity must be 3 or 5, got {arity}"
            ))),
        }
    }

    pub fn from_girth(girth: u32) -> Result<Self> {
        match girth {
            8 => Ok(Geometry::Quadrangle),
            12 => Ok(Geometry::Hexagon),
            _ => Err(Error::InvalidArgument(format!(
                "target girth must be 8 or 12, got {girth}"
            ))),
        }
    }

    /// Number of shifted copies, `q^(arity - 1)`.
    pub fn shift_count(self, q: u64) -> u64 {
        q.pow(self.arity() as u32 - 1)
    }

    /// Points (equivalently lines) per copy, `q^arity`.
    pub fn side_size(self, q: u64) -> u64 {
        q.pow(self.arity() as u32)
    }
}

/// Shift `(alpha2, alpha3)` of the quadrangle equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShiftQ {
    pub alpha2: FieldElement,
    pub alpha3: FieldElement,
}

/// Shift `(beta2, beta3, beta4, beta5)` of the hexagon equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShiftH {
    pub beta2: FieldElement,
    pub beta3: FieldElement,
    pub beta4: FieldElement,
    pub beta5: FieldElement,
}

impl ShiftQ {
    pub fn zero(field: &PrimeField) -> Self {
        ShiftQ {
            alpha2: field.zero(),
            alpha3: field.zero(),
        }
    }

    pub fn new(field: &PrimeField, alpha2: u64, alpha3: u64) -> Self {
        ShiftQ {
            alpha2: field.elem(alpha2),
            alpha3: field.elem(alpha3),
        }
    }
}

impl ShiftH {
    pub fn zero(field: &PrimeField) -> Self {
        let z = field.zero();
        ShiftH {
            beta2: z,
            beta3: z,
            beta4: z,
            beta5: z,
        }
    }

    pub fn new(field: &PrimeField, b: [u64; 4]) -> Self {
        ShiftH {
            beta2: field.elem(b[0]),
            beta3: field.elem(b[1]),
            beta4: field.elem(b[2]),
            beta5: field.elem(b[3]),
        }
    }
}

/// Either kind of shift, viewed as the offsets added to coordinates 2..=k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shift {
    Quadrangle(ShiftQ),
    Hexagon(ShiftH),
}

impl Shift {
    pub fn zero(geometry: Geometry, field: &PrimeField) -> Self {
        match geometry {
            Geometry::Quadrangle => Shift::Quadrangle(ShiftQ::zero(field)),
            Geometry::Hexagon => Shift::Hexagon(ShiftH::zero(field)),
        }
    }

    pub fn geometry(&self) -> Geometry {
        match self {
            Shift::Quadrangle(_) => Geometry::Quadrangle,
            Shift::Hexagon(_) => Geometry::Hexagon,
        }
    }

    pub fn offsets(&self) -> Vec<FieldElement> {
        match *self {
            Shift::Quadrangle(s) => vec![s.alpha2, s.alpha3],
            Shift::Hexagon(s) => vec![s.beta2, s.beta3, s.beta4, s.beta5],
        }
    }

    pub fn from_offsets(geometry: Geometry, offsets: &[FieldElement]) -> Result<Self> {
        match (geometry, offsets) {
            (Geometry::Quadrangle, &[alpha2, alpha3]) => {
                Ok(Shift::Quadrangle(ShiftQ { alpha2, alpha3 }))
            }
            (Geometry::Hexagon, &[beta2, beta3, beta4, beta5]) => Ok(Shift::Hexagon(ShiftH {
                beta2,
                beta3,
                beta4,
                beta5,
            })),
            _ => Err(Error::InvalidArgument(format!(
                "{geometry:?} shift needs {} offsets, got {}",
                geometry.arity() - 1,
                offsets.len()
            ))),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.offsets().iter().all(|o| o.is_zero())
    }

    /// Position among all shifts of its geometry, mixed radix base q.
    pub fn index(&self) -> u64 {
        tuple_index(&self.offsets())
    }

    pub fn from_index(geometry: Geometry, field: &PrimeField, index: u64) -> Self {
        let offsets = tuple_from_index(field, geometry.arity() - 1, index);
        Shift::from_offsets(geometry, &offsets).expect("length matches geometry")
    }
}

/// Mixed-radix index of a coordinate tuple, first coordinate most significant.
pub fn tuple_index(coords: &[FieldElement]) -> u64 {
    coords
        .iter()
        .fold(0u64, |acc, c| acc * c.modulus() as u64 + c.value() as u64)
}

pub fn tuple_from_index(field: &PrimeField, arity: usize, mut index: u64) -> Vec<FieldElement> {
    let q = field.modulus() as u64;
    let mut out = vec![field.zero(); arity];
    for slot in out.iter_mut().rev() {
        *slot = field.elem(index % q);
        index /= q;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Point,
    Line,
}

/// A point or line with its coordinates; printed as `P(1,2,3)` / `L(4,1,2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexLabel {
    pub side: Side,
    pub coords: Vec<FieldElement>,
}

impl VertexLabel {
    pub fn point(coords: Vec<FieldElement>) -> Self {
        VertexLabel {
            side: Side::Point,
            coords,
        }
    }

    pub fn line(coords: Vec<FieldElement>) -> Self {
        VertexLabel {
            side: Side::Line,
            coords,
        }
    }

    fn check(&self, geometry: Geometry, modulus: u32) -> Result<()> {
        if self.coords.len() != geometry.arity() {
            return Err(Error::MalformedLabel(format!(
                "{self} has {} coordinates, expected {}",
                self.coords.len(),
                geometry.arity()
            )));
        }
        if self.coords.iter().any(|c| c.modulus() != modulus) {
            return Err(Error::MalformedLabel(format!("{self} mixes field moduli")));
        }
        Ok(())
    }

    /// Parses `P(1,2,3)` or `L(...)` over `field`.
    pub fn parse(s: &str, field: &PrimeField) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::MalformedLabel(s.to_string());
        let side = match s.chars().next() {
            Some('P') => Side::Point,
            Some('L') => Side::Line,
            _ => return Err(bad()),
        };
        let inner = s[1..]
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let coords = inner
            .split(',')
            .map(|c| {
                let v = u64::from_str(c.trim()).map_err(|_| bad())?;
                if v >= field.modulus() as u64 {
                    return Err(bad());
                }
                Ok(field.elem(v))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VertexLabel { side, coords })
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.side {
            Side::Point => 'P',
            Side::Line => 'L',
        };
        write!(f, "{tag}(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Field constants used by the defining equations.
#[derive(Clone, Copy, Debug)]
pub struct Incidence {
    field: PrimeField,
    geometry: Geometry,
    two: FieldElement,
    three: FieldElement,
    inv2: FieldElement,
    inv3: FieldElement,
}

impl Incidence {
    pub fn new(field: PrimeField, geometry: Geometry) -> Self {
        let two = field.elem(2);
        let three = field.elem(3);
        Incidence {
            field,
            geometry,
            two,
            three,
            inv2: two.inv().expect("q >= 5"),
            inv3: three.inv().expect("q >= 5"),
        }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    /// The unique line with first coordinate `l1` adjacent to point `p` in
    /// the copy shifted by `offsets`. Writes into `line`.
    ///
    /// Solves the shifted system top-down for l2, l3 (and l4, l5).
    pub fn line_through(
        &self,
        p: &[FieldElement],
        offsets: &[FieldElement],
        l1: FieldElement,
        line: &mut [FieldElement],
    ) {
        let (two, three) = (self.two, self.three);
        let p1 = p[0];
        let p2 = p[1] + offsets[0];
        let p3 = p[2] + offsets[1];
        let l2 = l1 * p1 + p2;
        let l3 = two * p3 - two * l1 * p2;
        line[0] = l1;
        line[1] = l2;
        line[2] = l3;
        if self.geometry == Geometry::Hexagon {
            let p4 = p[3] + offsets[2];
            let p5 = p[4] + offsets[3];
            let l4 = three * p4 - three * l1 * p3;
            let l5 = self.inv2 * (three * p5 + three * l3 * p2 - three * l2 * p3 + l4 * p1);
            line[3] = l4;
            line[4] = l5;
        }
    }

    /// Evaluates the shifted equations exactly as written, left side against
    /// right side.
    pub fn satisfies(
        &self,
        p: &[FieldElement],
        l: &[FieldElement],
        offsets: &[FieldElement],
    ) -> bool {
        let (two, three) = (self.two, self.three);
        let q_ok = l[1] - (p[1] + offsets[0]) == l[0] * p[0]
            && l[2] - two * (p[2] + offsets[1]) == -(two * l[0] * (p[1] + offsets[0]));
        if !q_ok || self.geometry == Geometry::Quadrangle {
            return q_ok;
        }
        l[3] - three * (p[3] + offsets[2]) == -(three * l[0] * (p[2] + offsets[1]))
            && two * l[4] - three * (p[4] + offsets[3])
                == three * l[2] * (p[1] + offsets[0]) - three * l[1] * (p[2] + offsets[1])
                    + l[3] * p[0]
    }

    /// The unique offsets under which `p` and `l` are adjacent.
    pub fn solve_offsets(&self, p: &[FieldElement], l: &[FieldElement]) -> Vec<FieldElement> {
        let (two, three) = (self.two, self.three);
        let s2 = l[1] - p[1] - l[0] * p[0];
        let p2 = p[1] + s2;
        let s3 = self.inv2 * (l[2] + two * l[0] * p2) - p[2];
        if self.geometry == Geometry::Quadrangle {
            return vec![s2, s3];
        }
        let p3 = p[2] + s3;
        let s4 = self.inv3 * (l[3] + three * l[0] * p3) - p[3];
        let s5 =
            self.inv3 * (two * l[4] - three * l[2] * p2 + three * l[1] * p3 - l[3] * p[0]) - p[4];
        vec![s2, s3, s4, s5]
    }

    /// Line ids (`0..q^k`, not offset) adjacent to point id `point`.
    pub fn lines_of_point(&self, point: u64, offsets: &[FieldElement], out: &mut Vec<u64>) {
        let k = self.geometry.arity();
        let p = tuple_from_index(&self.field, k, point);
        let mut line = vec![self.field.zero(); k];
        out.clear();
        for l1 in self.field.elements() {
            self.line_through(&p, offsets, l1, &mut line);
            out.push(tuple_index(&line));
        }
    }
}

/// One of the graphs Q(q), H(q) or a shifted copy.
#[derive(Clone, Debug)]
pub struct PointLineGraph {
    field: PrimeField,
    shift: Shift,
    graph: Graph,
}

impl PointLineGraph {
    pub fn q(&self) -> u32 {
        self.field.modulus()
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn geometry(&self) -> Geometry {
        self.shift.geometry()
    }

    pub fn shift(&self) -> &Shift {
        &self.shift
    }

    /// True for the unshifted graph.
    pub fn is_base(&self) -> bool {
        self.shift.is_zero()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    /// Number of points (equal to the number of lines).
    pub fn side_size(&self) -> usize {
        self.geometry().side_size(self.q() as u64) as usize
    }

    pub fn vertex_id(&self, label: &VertexLabel) -> Result<u32> {
        label.check(self.geometry(), self.q())?;
        let idx = tuple_index(&label.coords) as u32;
        Ok(match label.side {
            Side::Point => idx,
            Side::Line => self.side_size() as u32 + idx,
        })
    }

    pub fn vertex_label(&self, v: u32) -> VertexLabel {
        let n = self.side_size() as u32;
        let k = self.geometry().arity();
        if v < n {
            VertexLabel::point(tuple_from_index(&self.field, k, v as u64))
        } else {
            VertexLabel::line(tuple_from_index(&self.field, k, (v - n) as u64))
        }
    }
}

fn build(q: u64, shift: Shift) -> Result<PointLineGraph> {
    let field = PrimeField::new(q)?;
    let geometry = shift.geometry();
    let offsets = shift.offsets();
    if offsets.iter().any(|o| !field.contains(*o)) {
        return Err(Error::ModulusMismatch {
            left: field.modulus(),
            right: offsets[0].modulus(),
        });
    }
    let incidence = Incidence::new(field, geometry);
    let n = geometry.side_size(q);
    let edges: Vec<(u32, u32)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|p| {
            let mut lines = Vec::with_capacity(q as usize);
            incidence.lines_of_point(p, &offsets, &mut lines);
            lines.into_iter().map(move |l| (p as u32, (n + l) as u32))
        })
        .collect();

    let k = geometry.arity();
    let labels = (0..2 * n)
        .map(|v| {
            let (side, idx) = if v < n {
                (Side::Point, v)
            } else {
                (Side::Line, v - n)
            };
            VertexLabel {
                side,
                coords: tuple_from_index(&field, k, idx),
            }
            .to_string()
        })
        .collect();
    let classes = (0..2 * n)
        .map(|v| if v < n { Class::First } else { Class::Second })
        .collect();
    let mut builder = GraphBuilder::with_capacity(2 * n as usize, edges.len())
        .labels(labels)
        .classes(classes);
    for (u, v) in edges {
        builder.add_edge(u, v)?;
    }
    Ok(PointLineGraph {
        field,
        shift,
        graph: builder.build()?,
    })
}

/// The quadrangle graph on `2q^3` vertices, shifted by `shift`.
pub fn build_quadrangle(q: u64, shift: ShiftQ) -> Result<PointLineGraph> {
    build(q, Shift::Quadrangle(shift))
}

/// The hexagon graph on `2q^5` vertices, shifted by `shift`.
pub fn build_hexagon(q: u64, shift: ShiftH) -> Result<PointLineGraph> {
    build(q, Shift::Hexagon(shift))
}

pub fn build_shifted(q: u64, shift: Shift) -> Result<PointLineGraph> {
    build(q, shift)
}

fn field_of(label: &VertexLabel) -> Result<PrimeField> {
    let m = label
        .coords
        .first()
        .ok_or_else(|| Error::MalformedLabel(label.to_string()))?
        .modulus();
    PrimeField::new(m as u64)
}

fn shift_map(
    label: &VertexLabel,
    offsets: &[FieldElement],
    geometry: Geometry,
    sign: bool,
) -> Result<VertexLabel> {
    let field = field_of(label)?;
    label.check(geometry, field.modulus())?;
    if offsets.iter().any(|o| !field.contains(*o)) {
        return Err(Error::MalformedLabel(format!(
            "shift and {label} live in different fields"
        )));
    }
    if label.side == Side::Line {
        return Ok(label.clone());
    }
    let mut coords = label.coords.clone();
    for (c, &o) in coords[1..].iter_mut().zip(offsets) {
        *c = if sign { *c + o } else { *c - o };
    }
    Ok(VertexLabel::point(coords))
}

/// Points map by `(p1, p2, p3) -> (p1, p2 - alpha2, p3 - alpha3)`; lines are
/// fixed.
///
/// This carries the unshifted graph onto the copy shifted by `shift`:
/// `(p, l)` is an edge of Q exactly when the image pair is an edge of the
/// shifted copy. [`shift_isomorphism_q_inverse`] goes the other way.
pub fn shift_isomorphism_q(label: &VertexLabel, shift: &ShiftQ) -> Result<VertexLabel> {
    shift_map(
        label,
        &[shift.alpha2, shift.alpha3],
        Geometry::Quadrangle,
        false,
    )
}

/// Inverse of [`shift_isomorphism_q`]: shifted copy onto the unshifted graph.
pub fn shift_isomorphism_q_inverse(label: &VertexLabel, shift: &ShiftQ) -> Result<VertexLabel> {
    shift_map(
        label,
        &[shift.alpha2, shift.alpha3],
        Geometry::Quadrangle,
        true,
    )
}

/// Hexagon analogue of [`shift_isomorphism_q`]: points lose the shift on
/// coordinates 2..=5, lines are fixed.
pub fn shift_isomorphism_h(label: &VertexLabel, shift: &ShiftH) -> Result<VertexLabel> {
    shift_map(
        label,
        &[shift.beta2, shift.beta3, shift.beta4, shift.beta5],
        Geometry::Hexagon,
        false,
    )
}

pub fn shift_isomorphism_h_inverse(label: &VertexLabel, shift: &ShiftH) -> Result<VertexLabel> {
    shift_map(
        label,
        &[shift.beta2, shift.beta3, shift.beta4, shift.beta5],
        Geometry::Hexagon,
        true,
    )
}

fn check_pair(p: &[FieldElement], l: &[FieldElement], geometry: Geometry) -> Result<PrimeField> {
    let field = p
        .first()
        .map(|e| PrimeField::new(e.modulus() as u64))
        .ok_or_else(|| Error::MalformedLabel("empty point tuple".into()))??;
    VertexLabel::point(p.to_vec()).check(geometry, field.modulus())?;
    VertexLabel::line(l.to_vec()).check(geometry, field.modulus())?;
    Ok(field)
}

/// The unique `(alpha2, alpha3)` making `p` and `l` adjacent.
pub fn solve_shift_q(p: &[FieldElement], l: &[FieldElement]) -> Result<ShiftQ> {
    let field = check_pair(p, l, Geometry::Quadrangle)?;
    let s = Incidence::new(field, Geometry::Quadrangle).solve_offsets(p, l);
    Ok(ShiftQ {
        alpha2: s[0],
        alpha3: s[1],
    })
}

/// The unique `(beta2, .., beta5)` making `p` and `l` adjacent.
pub fn solve_shift_h(p: &[FieldElement], l: &[FieldElement]) -> Result<ShiftH> {
    let field = check_pair(p, l, Geometry::Hexagon)?;
    let s = Incidence::new(field, Geometry::Hexagon).solve_offsets(p, l);
    Ok(ShiftH {
        beta2: s[0],
        beta3: s[1],
        beta4: s[2],
        beta5: s[3],
    })
}
