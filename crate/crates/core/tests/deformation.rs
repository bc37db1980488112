use krylov_core::chain::{solve_chain, SolverConfig};
use krylov_core::deform::{delta_sequence, deform_b2_table, DeformationParams};
use krylov_core::families::LanczosSequence;

#[test]
fn plateau_follows_the_deformed_ledger() {
    for kappa in [0.25, 0.5, 0.75] {
        let seq = LanczosSequence::linear().deformed(kappa).unwrap();
        // the front passes N_max near t ≈ 6.7; its echo needs several more time units to reach the origin
        let cfg = SolverConfig { record_sites: Some(21), fail_on_truncation: false, ..Default::default() };
        let tr = solve_chain(&seq, &[8.0], &cfg).unwrap();
        let phi = &tr.phi[0];
        let exact = kappa + (1.0 - kappa) / 8f64.cosh();
        assert!((phi[0] - exact).abs() < 1e-8, "κ={kappa}: {} vs {exact}", phi[0]);
        let linear: Vec<f64> = (0..=40).map(|n| (n * n) as f64).collect();
        let d = deform_b2_table(&linear, &DeformationParams::new(kappa).unwrap(), 40).unwrap();
        let y = delta_sequence(&d, 10).unwrap().y;
        for n in 0..=10 {
            let want = kappa * kappa * y[n];
            assert!((phi[2 * n].powi(2) - want).abs() < 5e-3, "κ={kappa} n={n}: {} vs {want}", phi[2 * n].powi(2));
        }
    }
}

#[test]
fn deformed_chain_keeps_unit_norm() {
    let seq = LanczosSequence::linear().deformed(0.4).unwrap();
    let tr = solve_chain(&seq, &[1.0, 3.0, 5.0], &SolverConfig::default()).unwrap();
    for drift in &tr.norm_drift {
        assert!(*drift < 1e-10, "{drift}");
    }
}
