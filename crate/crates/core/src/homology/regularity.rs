use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::graded::{ModuleKind, PresentedModule};
use crate::homology::koszul::koszul_table;
use crate::homology::report::{BettiTable, RegularityMethod, RegularityReport};
use crate::homology::resolution::minimal_resolution;

fn first_nonzero(lo: i64, hf: &[usize]) -> Option<i64> {
    hf.iter().position(|&h| h > 0).map(|k| lo + k as i64)
}

fn last_nonzero(lo: i64, hf: &[usize]) -> Option<i64> {
    hf.iter().rposition(|&h| h > 0).map(|k| lo + k as i64)
}

/// Castelnuovo–Mumford regularity over a polynomial ring, `max_j (end Tor_j − j)`.
///
/// A cokernel whose Hilbert function vanishes at some degree at or above its top
/// generator degree is finite dimensional, and its regularity is its top nonzero degree.
/// Other cokernels go through [`minimal_resolution`]. A kernel `K = ker(f : F → G)` is
/// handled through `C = coker f`: in degrees above every generator degree of `F` and `G`,
/// `Tor_j(K)` agrees with `Tor_{j+2}(C)`, so the Koszul table of `K` is complete once it
/// reaches `max(top twist, reg C + v)`.
pub fn regularity(module: &PresentedModule, degree_cap: i64) -> Result<RegularityReport> {
    let ring = module.ring();
    if !ring.is_polynomial_ring() {
        return Err(Error::UnsupportedRing(format!(
            "regularity is computed over a polynomial ring, got {ring}"
        )));
    }
    match module.kind() {
        ModuleKind::Cokernel => cokernel_regularity(module, degree_cap),
        ModuleKind::Kernel => kernel_regularity(module, degree_cap),
    }
}

fn cokernel_regularity(module: &PresentedModule, cap: i64) -> Result<RegularityReport> {
    let g = module.ambient();
    let (Some(lo), Some(top)) = (g.min_twist(), g.max_twist()) else {
        return Ok(RegularityReport::zero_module(
            RegularityMethod::ArtinianTopDegree,
        ));
    };
    if lo > cap {
        return Ok(RegularityReport {
            regularity: ExtInt::PosInf,
            indeg: ExtInt::PosInf,
            end: None,
            certified: false,
            method: RegularityMethod::Betti,
        });
    }
    let hf = module.hilbert_range(lo, cap);
    let indeg = first_nonzero(lo, &hf);
    let vanishes = (top.max(lo)..=cap).any(|d| hf[(d - lo) as usize] == 0);
    if vanishes {
        return Ok(match last_nonzero(lo, &hf) {
            None => RegularityReport::zero_module(RegularityMethod::ArtinianTopDegree),
            Some(e) => RegularityReport {
                regularity: ExtInt::Finite(e),
                indeg: ExtInt::Finite(indeg.expect("nonzero somewhere")),
                end: Some(ExtInt::Finite(e)),
                certified: true,
                method: RegularityMethod::ArtinianTopDegree,
            },
        });
    }
    let res = minimal_resolution(module, ring_vars(module) + 1, cap);
    let table = res.betti_table();
    Ok(RegularityReport {
        regularity: table.regularity(),
        indeg: indeg.map_or(ExtInt::PosInf, ExtInt::Finite),
        end: None,
        certified: res.complete,
        method: RegularityMethod::Betti,
    })
}

fn ring_vars(module: &PresentedModule) -> usize {
    module.ring().nvars()
}

/// Koszul Betti table of a kernel module together with the degree through which it is
/// known to be complete (when the companion cokernel was certified).
pub fn kernel_betti(module: &PresentedModule, cap: i64) -> Result<(BettiTable, Option<i64>)> {
    debug_assert_eq!(module.kind(), ModuleKind::Kernel);
    let f = module.map();
    let coker = PresentedModule::cokernel(f.clone());
    let c = cokernel_regularity(&coker, cap)?;
    let v = ring_vars(module) as i64;
    let top = f
        .domain()
        .max_twist()
        .into_iter()
        .chain(f.codomain().max_twist())
        .max();
    let bound = match (c.certified, c.regularity, top) {
        (_, _, None) => Some(i64::MIN),
        (true, ExtInt::NegInf, Some(t)) => Some(t),
        (true, ExtInt::Finite(r), Some(t)) => Some(t.max(r + v)),
        _ => None,
    };
    let through = bound.filter(|&b| b <= cap);
    let table = koszul_table(module, through.unwrap_or(cap))?;
    Ok((table, through))
}

fn kernel_regularity(module: &PresentedModule, cap: i64) -> Result<RegularityReport> {
    let (mut table, through) = kernel_betti(module, cap)?;
    table.complete = through.is_some();
    if table.complete && table.is_empty() {
        return Ok(RegularityReport::zero_module(RegularityMethod::Betti));
    }
    let indeg = table
        .row(0)
        .keys()
        .next()
        .copied()
        .map_or(ExtInt::PosInf, ExtInt::Finite);
    Ok(RegularityReport {
        regularity: table.regularity(),
        indeg,
        end: None,
        certified: table.complete,
        method: RegularityMethod::Betti,
    })
}
