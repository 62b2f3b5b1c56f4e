//! `hrg build`: a JSON list of construction steps applied in order.

use hrg_core::catalog;
use hrg_core::constructions::cocycle::degree_cocycle;
use hrg_core::constructions::group::Group;
use hrg_core::constructions::products::{
    affine_pullback, cartesian_product, monoidal_2graph, reorder_colors, yang_baxter_graph, YangBaxterMap,
};
use hrg_core::constructions::skew::{free_cover, SkewProduct};
use hrg_core::lazy::window;
use hrg_core::{validate_presentation, Degree, Error, KGraph, Presentation, Result};
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pipeline {
    pub steps: Vec<Step>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Step {
    /// A catalog fixture by name, e.g. `B2` or `pqr-7.1`.
    Catalog { name: String },
    /// A presentation file, relative to the pipeline file.
    Load { path: String },
    /// Window of radius `radius` in the skew product by the `free` or `degree` cocycle.
    SkewProduct { cocycle: String, radius: usize },
    /// Rows `[i, j, j', i']` with θ(i, j) = (j', i'), 1-based.
    Monoidal2graph { n1: usize, n2: usize, theta: Vec<[usize; 4]> },
    /// R(e, f) = (σ(f), e) with σ given by its images, 0-based.
    YangBaxter { k: usize, sigma: Vec<usize> },
    /// Product with a catalog fixture.
    CartesianProduct { with: String },
    AffinePullback { matrix: Vec<Vec<u32>>, p: Vec<u32> },
    RestrictColors { colors: Vec<usize> },
    ReorderColors { order: Vec<usize> },
}

/// Runs every step; a step that needs an input fails on an empty pipeline.
/// Errors carry the 1-based index of the failing step.
pub fn run(pipeline: &Pipeline, base_dir: &Path) -> std::result::Result<Presentation, (usize, Error)> {
    let mut current: Option<Presentation> = None;
    for (i, step) in pipeline.steps.iter().enumerate() {
        let out = apply(step, current.take(), base_dir).map_err(|e| (i + 1, e))?;
        current = Some(out);
    }
    current.ok_or((0, Error::MalformedInput("empty pipeline".into())))
}

fn apply(step: &Step, input: Option<Presentation>, base_dir: &Path) -> Result<Presentation> {
    let need = |p: Option<Presentation>| p.ok_or_else(|| Error::MalformedInput("step needs an input presentation".into()));
    let out = match step {
        Step::Catalog { name } => catalog::finite(name).ok_or_else(|| Error::UnknownName(name.clone()))?,
        Step::Load { path } => Presentation::load(&base_dir.join(path))?,
        Step::SkewProduct { cocycle, radius } => {
            let g = KGraph::new(&need(input)?)?;
            let p = match cocycle.as_str() {
                "free" => {
                    let sp = free_cover(g)?;
                    window(&sp, &sp.seeds(&sp.cocycle.group.identity()), *radius)?.presentation
                }
                "degree" => {
                    let c = degree_cocycle(&g);
                    let sp = SkewProduct::new(g, c);
                    window(&sp, &sp.seeds(&sp.cocycle.group.identity()), *radius)?.presentation
                }
                other => return Err(Error::UnknownName(format!("cocycle {other}"))),
            };
            // a window is a partial graph: squares at its boundary may be missing
            KGraph::new_partial(&p)?;
            return Ok(p);
        }
        Step::Monoidal2graph { n1, n2, theta } => {
            let lookup = |i: usize, j: usize| {
                theta.iter().find(|r| r[0] == i && r[1] == j).map(|r| (r[2], r[3])).unwrap_or((0, 0))
            };
            monoidal_2graph(*n1, *n2, lookup)?
        }
        Step::YangBaxter { k, sigma } => yang_baxter_graph(*k, &YangBaxterMap::permutation(sigma)?)?,
        Step::CartesianProduct { with } => {
            let other = catalog::finite(with).ok_or_else(|| Error::UnknownName(with.clone()))?;
            cartesian_product(&need(input)?, &other)?
        }
        Step::AffinePullback { matrix, p } => affine_pullback(&need(input)?, matrix, &Degree(p.clone()))?,
        Step::RestrictColors { colors } => need(input)?.restrict_colors(colors),
        Step::ReorderColors { order } => reorder_colors(&need(input)?, order)?,
    };
    let report = validate_presentation(&out)?;
    if let Some(f) = report.failure {
        return Err(Error::Invalid(f.describe()));
    }
    Ok(out)
}
