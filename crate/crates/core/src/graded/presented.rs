use serde::{Deserialize, Serialize};

use super::matrix::GradedMatrix;
use super::module::GradedFreeModule;
use super::pieces::Chain;
use super::ring::RingSpec;
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleKind {
    Cokernel,
    Kernel,
}

/// The graded cokernel or kernel of a homogeneous map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedModule {
    kind: ModuleKind,
    map: GradedMatrix,
}

impl PresentedModule {
    pub fn new(kind: ModuleKind, map: GradedMatrix) -> Self {
        PresentedModule { kind, map }
    }

    pub fn cokernel(map: GradedMatrix) -> Self {
        Self::new(ModuleKind::Cokernel, map)
    }

    pub fn kernel(map: GradedMatrix) -> Self {
        Self::new(ModuleKind::Kernel, map)
    }

    /// The free module itself, as the cokernel of the zero map from the zero module.
    pub fn free(module: &GradedFreeModule) -> Self {
        let zero = GradedFreeModule::new(module.ring(), Vec::new());
        Self::cokernel(GradedMatrix::zero(zero, module.clone()))
    }

    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn map(&self) -> &GradedMatrix {
        &self.map
    }

    pub fn ring(&self) -> &RingSpec {
        self.map.ring()
    }

    /// The free module the elements live in: the codomain of a cokernel, the domain of a
    /// kernel.
    pub fn ambient(&self) -> &GradedFreeModule {
        match self.kind {
            ModuleKind::Cokernel => self.map.codomain(),
            ModuleKind::Kernel => self.map.domain(),
        }
    }

    /// Dimension of the degree-`degree` piece.
    pub fn hilbert_function(&self, degree: i64) -> usize {
        self.hilbert_range(degree, degree)[0]
    }

    /// Hilbert function on `lo..=hi`.
    pub fn hilbert_range(&self, lo: i64, hi: i64) -> Vec<usize> {
        if hi < lo {
            return Vec::new();
        }
        let chain = Chain::new(&[&self.map], hi).expect("single map chain");
        let degrees: Vec<i64> = (lo..=hi).collect();
        par::map_vec(degrees, |d| {
            let rank = chain.rank_in_degree(0, d);
            self.ambient().hilbert_function(d) - rank
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldSpec;
    use crate::graded::poly::Polynomial;

    #[test]
    fn residue_field_and_free_module() {
        let r = RingSpec::polynomial(FieldSpec::gf2(), &["U", "V", "W"]).unwrap();
        let f = GradedMatrix::from_rows(
            &r,
            vec![0],
            vec![1, 1, 1],
            vec![(0..3).map(|i| Polynomial::var(&r, i)).collect()],
        )
        .unwrap();
        let k = PresentedModule::cokernel(f.clone());
        assert_eq!(k.hilbert_range(-1, 3), vec![0, 1, 0, 0, 0]);
        let free = PresentedModule::free(&GradedFreeModule::new(&r, vec![2]));
        assert_eq!(free.hilbert_function(2), 1);
        assert_eq!(free.hilbert_function(4), 6);
        // kernel of [U V W]: 3 Koszul relations in degree 2
        assert_eq!(
            PresentedModule::kernel(f).hilbert_range(1, 3),
            vec![0, 3, 8]
        );
    }
}
