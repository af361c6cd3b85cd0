//! The Klein arrangement of 21 lines over ℚ(a), a² + a + 2 = 0, with its 49
//! singular points and the 12-line subarrangement K′.

use num_complex::Complex64;

use crate::arrangement::line_census;
use crate::error::{Error, Result};
use crate::incidence::IncidenceStructure;
use crate::numfield::{FieldElement, FieldRef, NumberField};
use crate::polyalg::parse_element;
use crate::projplane::{incident, ProjectiveLine, ProjectivePoint};
use crate::rational::q;

/// ℓ₁ … ℓ₂₁ as `x:y:z` coefficient triples in the generator `a`.
pub const LINES: [&str; 21] = [
    "1:0:0", "0:1:1", "a:1:-1", "a:-1:1", "0:-1:1", "1:a:-1", "a:-1:-1", "-1:1:a", "a:1:1", "-1:a:1", "-1:-1:a",
    "1:0:1", "-1:a:-1", "1:a:1", "-1:0:1", "1:-1:a", "1:1:a", "0:0:1", "-1:1:0", "1:1:0", "0:1:0",
];

/// Points 1–21, the quadruple points.
pub const QUAD_POINTS: [&str; 21] = [
    "1:0:0", "1:-a-1:-1", "1:a+1:1", "1:-a-1:1", "1:-1:1+a", "0:1:1", "a+1:-1:1", "0:0:1", "a+1:-1:-1", "a+1:1:1",
    "1:0:-1", "1:1:a+1", "1:-1:0", "a+1:1:-1", "1:a+1:-1", "1:0:1", "0:1:-1", "1:1:0", "1:-1:-1-a", "1:1:-1-a",
    "0:1:0",
];

/// Points 22–49, the triple points.
pub const TRIPLE_POINTS: [&str; 28] = [
    "0:1:a", "0:1:-a", "a:-1:0", "0:a:-1", "-a+1:1:-1", "1:-1:a-1", "1:1-a:1", "a:1:0", "1:-a:0", "1:-1:1-a",
    "1:1:a-1", "1:0:a", "1:a:0", "1:-1:1", "1:a-1:1", "0:a:1", "a-1:1:1", "a:0:1", "1:1:-1", "1:1:1", "1:0:-a",
    "1:1:-a+1", "a-1:1:-1", "1:-a+1:-1", "1:a-1:-1", "a-1:-1:-1", "1:-1:-1", "a:0:-1",
];

/// Line labels (1-based) of the subarrangement K′.
pub const KPRIME: [usize; 12] = [3, 4, 6, 7, 8, 9, 10, 11, 13, 14, 16, 17];

/// The triple points of K′ as printed; the twelfth is illegible in print and
/// is recovered by [`kprime_point12`].
pub const KPRIME_PRINTED: [&str; 11] = [
    "a-1:a-1:-a-3", "a+1:-a+1:-a-1", "a-1:a+1:-a-1", "-a+1:a+1:-a-1", "-a-1:a+1:a-1", "-a-1:-a+1:-a-1",
    "-a-1:-a+1:a+1", "a-1:-a+1:-a-3", "a-1:-a-1:-a-1", "-a+1:-a-1:-a-1", "a+1:a+1:-a+1",
];

/// Labels of the lines with rational coefficients.
pub const REAL9: [usize; 9] = [1, 2, 5, 12, 15, 18, 19, 20, 21];

/// Triples of K′ lines that become concurrent in the real (12₃) realization.
pub const KPRIME_EXTRA_TRIPLES: [[usize; 3]; 4] = [[7, 11, 13], [3, 8, 14], [4, 10, 17], [6, 9, 16]];

/// The five generating lines as printed, in the generator `a`.
pub const GENERATORS_PRINTED: [&str; 5] = ["1:0:0", "0:1:0", "0:0:1", "1:-a-1:-1", "1:-1:a+1"];

/// ℚ(a) with a the root of t² + t + 2 of positive imaginary part.
pub fn klein_field() -> FieldRef {
    NumberField::create(&[q(2), q(1)], Complex64::new(-0.5, 1.3229)).expect("t² + t + 2 is squarefree")
}

/// Parses `u:v:w` with entries in the generator `a`.
pub fn parse_triple(field: &FieldRef, text: &str) -> Result<[FieldElement; 3]> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("expected u:v:w, found {text:?}")));
    }
    let mut out = Vec::with_capacity(3);
    for p in parts {
        out.push(FieldElement::new(field, parse_element(p)?));
    }
    Ok(out.try_into().unwrap_or_else(|_| unreachable!()))
}

pub fn point(field: &FieldRef, text: &str) -> Result<ProjectivePoint> {
    ProjectivePoint::new(parse_triple(field, text)?)
}

pub fn line(field: &FieldRef, text: &str) -> Result<ProjectiveLine> {
    ProjectiveLine::new(parse_triple(field, text)?)
}

/// Galois conjugation a ↦ −1 − a of ℚ(a).
pub fn conjugate(u: &FieldElement) -> FieldElement {
    let c = u.coeffs();
    let c0 = c.first().cloned().unwrap_or_else(|| q(0));
    let c1 = c.get(1).cloned().unwrap_or_else(|| q(0));
    FieldElement::new(u.field(), vec![&c0 - &c1, -c1])
}

pub fn conjugate_line(l: &ProjectiveLine) -> Result<ProjectiveLine> {
    ProjectiveLine::new(l.coords().clone().map(|c| conjugate(&c)))
}

#[derive(Clone, Debug)]
pub struct KleinModel {
    pub field: FieldRef,
    /// ℓ₁ … ℓ₂₁ at indices 0 … 20.
    pub lines: Vec<ProjectiveLine>,
    /// Points 1–21.
    pub quad_points: Vec<ProjectivePoint>,
    /// Points 22–49.
    pub triple_points: Vec<ProjectivePoint>,
    /// 0-based lines through each quadruple point.
    pub quad_lines: Vec<Vec<usize>>,
    /// 0-based lines through each triple point.
    pub triple_lines: Vec<Vec<usize>>,
}

fn lines_through(p: &ProjectivePoint, lines: &[ProjectiveLine]) -> Vec<usize> {
    (0..lines.len()).filter(|&i| incident(p, &lines[i])).collect()
}

/// Loads the tables and re-verifies all 168 point-line flags.
pub fn klein_model() -> Result<KleinModel> {
    let field = klein_field();
    let lines: Vec<ProjectiveLine> = LINES.iter().map(|t| line(&field, t)).collect::<Result<_>>()?;
    let quad_points: Vec<ProjectivePoint> = QUAD_POINTS.iter().map(|t| point(&field, t)).collect::<Result<_>>()?;
    let triple_points: Vec<ProjectivePoint> = TRIPLE_POINTS.iter().map(|t| point(&field, t)).collect::<Result<_>>()?;
    let quad_lines: Vec<Vec<usize>> = quad_points.iter().map(|p| lines_through(p, &lines)).collect();
    let triple_lines: Vec<Vec<usize>> = triple_points.iter().map(|p| lines_through(p, &lines)).collect();
    for (i, ls) in quad_lines.iter().enumerate() {
        if ls.len() != 4 {
            return Err(Error::SelfCheck(format!("point {} lies on {} lines", i + 1, ls.len())));
        }
    }
    for (i, ls) in triple_lines.iter().enumerate() {
        if ls.len() != 3 {
            return Err(Error::SelfCheck(format!("point {} lies on {} lines", i + 22, ls.len())));
        }
    }
    Ok(KleinModel { field, lines, quad_points, triple_points, quad_lines, triple_lines })
}

impl KleinModel {
    /// Lines by 1-based labels.
    pub fn select(&self, labels: &[usize]) -> Vec<ProjectiveLine> {
        labels.iter().map(|&l| self.lines[l - 1].clone()).collect()
    }

    pub fn kprime_lines(&self) -> Vec<ProjectiveLine> {
        self.select(&KPRIME)
    }

    /// 1-based labels of the lines matching the printed generators, read in
    /// either embedding of `a`.
    pub fn generator_labels(&self) -> Result<Vec<usize>> {
        GENERATORS_PRINTED
            .iter()
            .map(|t| {
                let h = line(&self.field, t)?;
                let hc = conjugate_line(&h)?;
                self.lines
                    .iter()
                    .position(|l| *l == h || *l == hc)
                    .map(|i| i + 1)
                    .ok_or_else(|| Error::SelfCheck(format!("generator {t} is not a Klein line")))
            })
            .collect()
    }

    /// Whether the printed generator is literally one of the lines, without
    /// conjugation.
    pub fn generator_is_literal(&self, idx: usize) -> Result<bool> {
        let h = line(&self.field, GENERATORS_PRINTED[idx])?;
        Ok(self.lines.contains(&h))
    }
}

/// The printed K′ triple points 1–11.
pub fn kprime_printed(field: &FieldRef) -> Result<Vec<ProjectivePoint>> {
    KPRIME_PRINTED.iter().map(|t| point(field, t)).collect()
}

/// The K′ triple point missing from the printed list 1–11.
pub fn kprime_point12(m: &KleinModel) -> Result<ProjectivePoint> {
    let arr = line_census(&m.kprime_lines())?;
    let printed = kprime_printed(&m.field)?;
    let missing: Vec<&ProjectivePoint> =
        arr.points_of_multiplicity(3).into_iter().map(|c| &c.point).filter(|p| !printed.contains(p)).collect();
    match missing.as_slice() {
        [p] => Ok((*p).clone()),
        _ => Err(Error::SelfCheck(format!("{} K′ triple points are missing from the printed list", missing.len()))),
    }
}

/// The 21 quadruple points of the Grünbaum–Rigby realization given as
/// 1-based Klein line labels.
pub const I_GR: [[usize; 4]; 21] = [
    [1, 2, 15, 21],
    [1, 3, 8, 13],
    [1, 6, 9, 14],
    [4, 5, 15, 16],
    [4, 6, 8, 10],
    [8, 11, 15, 18],
    [9, 13, 17, 21],
    [11, 14, 16, 20],
    [2, 4, 9, 11],
    [9, 12, 15, 19],
    [3, 5, 12, 14],
    [8, 12, 17, 20],
    [10, 13, 16, 19],
    [3, 4, 17, 18],
    [2, 3, 19, 20],
    [10, 14, 18, 21],
    [1, 7, 16, 17],
    [5, 6, 20, 21],
    [5, 7, 11, 13],
    [2, 7, 10, 12],
    [6, 7, 18, 19],
];

/// K′ as an incidence structure: its 12 triple points against its 12 lines,
/// block j being line `KPRIME[j]`.
pub fn kprime_structure(m: &KleinModel) -> Result<IncidenceStructure> {
    let lines = m.kprime_lines();
    let arr = line_census(&lines)?;
    let triples = arr.points_of_multiplicity(3);
    let blocks = (0..lines.len()).map(|j| (0..triples.len()).filter(|&p| triples[p].curves.contains(&j)).collect()).collect();
    IncidenceStructure::new(triples.len(), blocks)
}
