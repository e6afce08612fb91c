use serde::Serialize;

use super::bicomplex::diagram_bicomplex_truncated;
use super::local::{local_system, LocalCohomologySystem};
use super::{Convention, DiagramModule, GroupDiagram};
use crate::chaincomplex::{spectral_sequence, SpectralPages};
use crate::error::{Error, Result};
use crate::natsys::bw_cohomology;

/// The spectral sequence of the diagram bicomplex next to the independently
/// computed `H^p_BW(I, ℋ^q)`, in total degrees up to `n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalToGlobal {
    pub convention: Convention,
    pub n_max: usize,
    /// `[p][q]` for `p + q <= n_max`.
    pub e2: Vec<Vec<usize>>,
    pub e2_local: Vec<Vec<usize>>,
    pub einf: Vec<Vec<usize>>,
    pub r_max: usize,
    /// `dim H^n(Tot)` for `n <= n_max`.
    pub total: Vec<usize>,
    pub einf_diagonals: Vec<usize>,
    pub e2_matches: bool,
    pub converges: bool,
}

/// Runs the spectral sequence and compares it with local systems computed
/// here in the same convention.
pub fn local_to_global(a: &GroupDiagram, m: &DiagramModule, n_max: usize, conv: Convention) -> Result<LocalToGlobal> {
    let locals = (0..=n_max).map(|q| local_system(a, m, q, conv)).collect::<Result<Vec<_>>>()?;
    local_to_global_with(a, m, n_max, conv, &locals)
}

/// As [`local_to_global`] with caller-supplied local systems, one per
/// `q <= n_max` in order.
pub fn local_to_global_with(
    a: &GroupDiagram,
    m: &DiagramModule,
    n_max: usize,
    conv: Convention,
    locals: &[LocalCohomologySystem],
) -> Result<LocalToGlobal> {
    let top = n_max + 1;
    let d = diagram_bicomplex_truncated(a, m, top, top, Some(top), conv)?;
    let pages = spectral_sequence(&d)?;
    let e2_local = compare_e2(n_max, conv, locals)?;
    Ok(report(&pages, n_max, conv, e2_local))
}

/// `H^p_BW(I, ℋ^q)` for `p + q <= n_max`, as a `[p][q]` grid.
pub fn compare_e2(n_max: usize, conv: Convention, locals: &[LocalCohomologySystem]) -> Result<Vec<Vec<usize>>> {
    if locals.len() != n_max + 1 {
        return Err(Error::Invalid(format!("need {} local systems, got {}", n_max + 1, locals.len())));
    }
    let mut grid = vec![vec![0; n_max + 1]; n_max + 1];
    for (q, l) in locals.iter().enumerate() {
        if l.convention != conv {
            return Err(Error::ConventionMismatch(format!(
                "local system for q = {q} uses {} but the bicomplex uses {conv}",
                l.convention
            )));
        }
        if l.q != q {
            return Err(Error::Invalid(format!("local system in position {q} has q = {}", l.q)));
        }
        for (p, h) in bw_cohomology(&l.system, n_max - q)?.into_iter().enumerate() {
            grid[p][q] = h.rank;
        }
    }
    Ok(grid)
}

fn report(pages: &SpectralPages, n_max: usize, conv: Convention, e2_local: Vec<Vec<usize>>) -> LocalToGlobal {
    let clip = |grid: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        (0..=n_max)
            .map(|p| (0..=n_max).map(|q| if p + q <= n_max { grid[p][q] } else { 0 }).collect())
            .collect()
    };
    let e2 = clip(pages.page(2));
    let einf = clip(&pages.einf);
    let total: Vec<usize> = pages.total[..=n_max].to_vec();
    let einf_diagonals: Vec<usize> = (0..=n_max).map(|n| pages.einf_diagonal(n)).collect();
    // cells above n_max belong to the truncation and are ignored here
    let r_max = (1..pages.pages.len()).find(|&r| clip(&pages.pages[r]) == einf).unwrap_or(pages.r_max);
    LocalToGlobal {
        convention: conv,
        n_max,
        e2_matches: e2 == e2_local,
        converges: einf_diagonals == total,
        e2,
        e2_local,
        einf,
        r_max,
        total,
        einf_diagonals,
    }
}
