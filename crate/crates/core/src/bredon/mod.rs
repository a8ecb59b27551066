//! Equivariant cell complexes for the Weyl group, their coefficient systems
//! and cohomology ranks.

mod cochain;
mod complex;
mod document;
pub mod library;

pub use cochain::*;
pub use complex::*;
pub use document::*;

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::SeedableRng;

    fn load(doc: &WcwDocument) -> WCWComplex {
        load_wcw_complex(doc).unwrap()
    }

    #[test]
    fn bundled_ranks_and_betti() {
        for (name, doc, expected) in library::bundled_library() {
            let complex = load(&doc);
            assert_eq!(complex.expand_ordinary_complex().betti(), expected, "{name} betti");
            for system in [CoefficientSystem::Rt, CoefficientSystem::Zw] {
                let report = rank_report(&complex, system, &[], 1729).unwrap();
                assert_eq!(report.rational_ranks, expected, "{name} {system}");
            }
        }
    }

    #[test]
    fn circle_euler_and_psi() {
        let complex = load(&library::circle());
        assert_eq!(complex.euler_characteristic(), 0);
        assert_eq!(psi_transport_agrees(&complex).unwrap(), Some(true));
    }

    #[test]
    fn torus_probe_has_two_torsion() {
        let complex = load(&library::torus());
        let cc = cochain_complex(&complex, CoefficientSystem::Rt).unwrap();
        let probe = specialize_probe(&cc, &[1]).unwrap();
        assert_eq!(probe.cohomology[2].torsion, vec![BigInt::from(2)]);
        assert_eq!(probe.cohomology[2].free_rank, 1);
    }

    #[test]
    fn rejects_inverted_isotropy() {
        let mut doc = library::circle();
        doc.cells[0].isotropy = crate::weyl::SubgroupSpec::Parabolic(vec![]);
        doc.cells[2].isotropy = crate::weyl::SubgroupSpec::Parabolic(vec![0]);
        assert!(matches!(load_wcw_complex(&doc), Err(crate::Error::Complex(_))));
    }

    #[test]
    fn rejects_nonzero_boundary_squared() {
        let mut doc = library::torus();
        doc.boundary.pop();
        assert!(matches!(load_wcw_complex(&doc), Err(crate::Error::Complex(_))));
    }

    #[test]
    fn random_documents_keep_ranks() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let doc = library::random_subdivision(&library::torus(), &mut rng, 6).unwrap();
        let complex = load(&doc);
        let report = rank_report(&complex, CoefficientSystem::Rt, &[], 3).unwrap();
        assert_eq!(report.rational_ranks, vec![1, 2, 1]);
    }
}
