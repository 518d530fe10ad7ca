//! Combinatorial summary of an arrangement, for `arrlab analyze`.

use std::fmt::Write as _;

use serde::Serialize;

use super::VerifyError;
use crate::arrangement::{enumerate_faces, enumerate_regions, Arrangement};
use crate::lattice::IntersectionLattice;
use crate::rational::{self, Rational};
use crate::zonotope;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlatInfo {
    pub id: usize,
    pub dim: usize,
    pub rank: usize,
    pub hyperplanes: Vec<usize>,
    /// `μ(0̂, x)`.
    pub mobius: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FaceInfo {
    pub signs: String,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZonotopeInfo {
    /// `f_0 ..= f_r` of the zonotope of the essential part.
    pub f_vector: Vec<i64>,
    /// Face counts of the arrangement by dimension `r, …, 0`, which is the
    /// same list read from the other side.
    pub face_counts_reversed: Vec<usize>,
    pub alpha_perles_shephard: Vec<String>,
    pub alpha_dual: Vec<String>,
    pub alpha_0: String,
    pub mobius_bottom_top_abs: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub dim: usize,
    pub rank: usize,
    pub essential: bool,
    /// Canonical normals, entries as `"p/q"`.
    pub hyperplanes: Vec<Vec<String>>,
    pub flats: Vec<FlatInfo>,
    /// `(x, y)` with `y` covering `x`.
    pub covers: Vec<(usize, usize)>,
    /// Poset-rank characteristic polynomial, highest degree first.
    pub charpoly: Vec<String>,
    pub charpoly_text: String,
    pub region_count: usize,
    pub regions: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<FaceInfo>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zonotope: Option<ZonotopeInfo>,
}

pub fn analyze(arr: &Arrangement, with_zonotope: bool, with_faces: bool) -> Result<AnalysisReport, VerifyError> {
    let lat = IntersectionLattice::build(arr);
    let chi = lat.characteristic_polynomial();
    let flats = lat
        .flats()
        .iter()
        .map(|f| FlatInfo {
            id: f.id(),
            dim: f.dim(),
            rank: lat.rank_of(f.id()),
            hyperplanes: f.hyperplanes().to_vec(),
            mobius: lat.mobius_from_bottom(f.id()),
        })
        .collect();
    let regions: Vec<String> = enumerate_regions(arr).iter().map(|r| r.signs.to_string()).collect();
    let faces = with_faces.then(|| enumerate_faces(arr).into_iter().map(|f| FaceInfo { signs: f.cell.to_string(), dim: f.dim }).collect());
    let zonotope = if with_zonotope && !arr.is_empty() { Some(zonotope_info(arr)?) } else { None };
    Ok(AnalysisReport {
        dim: arr.dim(),
        rank: arr.rank(),
        essential: arr.is_essential(),
        hyperplanes: arr.normals().iter().map(|n| strings(n)).collect(),
        flats,
        covers: lat.covers(),
        charpoly: strings(&chi.highest_first()),
        charpoly_text: chi.to_string(),
        region_count: regions.len(),
        regions,
        faces,
        zonotope,
    })
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational::format).collect()
}

fn zonotope_info(arr: &Arrangement) -> Result<ZonotopeInfo, VerifyError> {
    let ess = arr.essentialize().arrangement;
    let lat = IntersectionLattice::build(&ess);
    let r = ess.dim();
    let mut counts = vec![0usize; r + 1];
    for f in enumerate_faces(&ess) {
        counts[r - f.dim] += 1;
    }
    let (alpha_0, mu) = zonotope::vertex_lemma_check(&lat)?;
    Ok(ZonotopeInfo {
        f_vector: zonotope::f_vector(&lat)?,
        face_counts_reversed: counts,
        alpha_perles_shephard: strings(&zonotope::angle_sums_perles_shephard(&lat)?),
        alpha_dual: strings(&zonotope::angle_sums_dual(&lat)?),
        alpha_0: rational::format(&alpha_0),
        mobius_bottom_top_abs: rational::format(&mu),
    })
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("analysis serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "R^{}, {} hyperplanes, rank {}{}",
            self.dim,
            self.hyperplanes.len(),
            self.rank,
            if self.essential { "" } else { " (not essential)" }
        );
        for (i, h) in self.hyperplanes.iter().enumerate() {
            let _ = writeln!(out, "  H{i}: ({})", h.join(", "));
        }
        let _ = writeln!(out, "chi(t) = {}", self.charpoly_text);
        let _ = writeln!(out, "regions: {}", self.region_count);
        let _ = writeln!(out);
        let _ = writeln!(out, "{:>4} {:>4} {:>5} {:>6}  hyperplanes", "flat", "dim", "rank", "mu");
        for f in &self.flats {
            let _ = writeln!(out, "{:>4} {:>4} {:>5} {:>6}  {:?}", f.id, f.dim, f.rank, f.mobius, f.hyperplanes);
        }
        if let Some(faces) = &self.faces {
            let _ = writeln!(out);
            let _ = writeln!(out, "faces ({}):", faces.len());
            for f in faces {
                let _ = writeln!(out, "  {} (dim {})", f.signs, f.dim);
            }
        }
        if let Some(z) = &self.zonotope {
            let _ = writeln!(out);
            let _ = writeln!(out, "zonotope f-vector: {:?}", z.f_vector);
            let _ = writeln!(out, "angle sums (projection): {}", z.alpha_perles_shephard.join(" "));
            let _ = writeln!(out, "angle sums (dual chi):   {}", z.alpha_dual.join(" "));
            let _ = writeln!(out, "alpha_0 = {}, |mu(0,1)| = {}", z.alpha_0, z.mobius_bottom_top_abs);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::{generate, GeneratorSpec};
    use super::*;

    #[test]
    fn three_lines_summary() {
        let a = analyze(&generate(&GeneratorSpec::ThreeLines).unwrap(), true, true).unwrap();
        assert_eq!(a.charpoly, ["1", "-3", "2"]);
        assert_eq!(a.region_count, 6);
        assert_eq!(a.flats.len(), 5);
        let z = a.zonotope.unwrap();
        assert_eq!(z.f_vector, vec![6, 6, 1]);
        assert_eq!(z.face_counts_reversed, vec![6, 6, 1]);
        assert_eq!(z.alpha_dual, ["2", "3", "1"]);
        assert_eq!(a.faces.unwrap().len(), 13);
    }
}
