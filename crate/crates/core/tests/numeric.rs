mod common;

use boxqubit::hamiltonian::Assembler;
use boxqubit::materials::builtin;
use boxqubit::numeric::{
    pair_doublets, qubit_h1, rabi_sum_over_states, solve_spectrum, QubitWorkspace, KRAMERS_TOL,
};
use boxqubit::{BasisCutoff, BoxGeometry, FieldConfig, Orientation, Tier, C64};
use common::rel;
use proptest::prelude::*;

fn reference() -> BoxGeometry {
    BoxGeometry::new(40.0, 30.0, 10.0, Orientation::Dot110).unwrap()
}

/// Dominant envelope `(n_x, n_y, n_z)` and heavy-hole weight of a doublet.
fn character(d: &boxqubit::KramersDoublet, c: BasisCutoff) -> ([usize; 3], f64) {
    let mut env = vec![0.0; c.envelope_dim()];
    let mut hh = 0.0;
    for col in 0..2 {
        for i in 0..c.dim() {
            let w = d.vectors[(i, col)].norm_sqr() / 2.0;
            env[i / 4] += w;
            if matches!(i % 4, 0 | 3) {
                hh += w;
            }
        }
    }
    let best = (0..env.len()).max_by(|&a, &b| env[a].total_cmp(&env[b])).unwrap();
    (c.envelope_numbers(best), hh)
}

#[test]
fn kramers_pairs_and_level_structure() {
    let si = builtin("Si").unwrap();
    let c = BasisCutoff::new(6, 6, 6).unwrap();
    let asm = Assembler::new(&reference(), c).unwrap();
    let h = asm.lk(&si).add(&asm.electric(0.1)).unwrap();
    assert!(h.hermiticity_residual() < 1e-12);
    let s = solve_spectrum(&h, 40).unwrap();
    let d = pair_doublets(&s, KRAMERS_TOL).unwrap();
    assert_eq!(d.len(), 20);
    assert!(d.iter().all(|x| x.gap < 1e-9));
    let (env0, hh0) = character(&d[0], c);
    assert_eq!(env0, [1, 1, 1]);
    assert!(hh0 > 0.8);
    // The first excited doublet is the x-excited envelope (Lx is the longest
    // side); the y-excited one follows.
    let (env1, hh1) = character(&d[1], c);
    let (env2, hh2) = character(&d[2], c);
    assert_eq!(env1, [2, 1, 1]);
    assert_eq!(env2, [1, 2, 1]);
    assert!(hh1 > 0.5 && hh2 > 0.5);
}

#[test]
fn h1_splitting_is_rotation_invariant() {
    let si = builtin("Si").unwrap();
    let c = BasisCutoff::new(3, 3, 2).unwrap();
    let asm = Assembler::new(&reference(), c).unwrap();
    let h = asm.lk(&si).add(&asm.electric(0.1)).unwrap();
    let d = pair_doublets(&solve_spectrum(&h, 4).unwrap(), KRAMERS_TOL).unwrap();
    let hm = asm.zeeman(&si, [0.2, 0.5, 0.7]).add(&asm.paramagnetic(&si, [0.2, 0.5, 0.7])).unwrap();
    let split = |h1: [[C64; 2]; 2]| (0.5 * (h1[0][0].re - h1[1][1].re)).hypot(h1[0][1].norm());
    let base = split(qubit_h1(&d[0], &hm));
    let u = random_unitary(0.3, 1.1, 2.0, 0.4);
    assert!(rel(split(qubit_h1(&d[0].rotated(u), &hm)), base) < 1e-12);
}

fn random_unitary(a: f64, b: f64, c: f64, t: f64) -> [[C64; 2]; 2] {
    let e = |x: f64| C64::from_polar(1.0, x);
    let (ct, st) = (t.cos(), t.sin());
    [[e(a) * ct, -e(b) * st], [e(a + c - b) * st, e(c) * ct]]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn rabi_is_pseudo_spin_gauge_invariant(p in proptest::collection::vec(0.0..6.28f64, 24)) {
        let si = builtin("Ge").unwrap();
        let c = BasisCutoff::new(3, 3, 2).unwrap();
        let asm = Assembler::new(&reference(), c).unwrap();
        let h = asm.lk(&si).add(&asm.electric(0.1)).unwrap();
        let d = pair_doublets(&solve_spectrum(&h, 12).unwrap(), KRAMERS_TOL).unwrap();
        let b = [0.3, 0.6, 0.8];
        let hm = asm.zeeman(&si, b).add(&asm.paramagnetic(&si, b)).unwrap();
        let y = asm.dipole_y();
        let base = rabi_sum_over_states(&d, &hm, &y, 0.03, 5).unwrap();
        let rotated: Vec<_> = d.iter().enumerate()
            .map(|(k, x)| x.rotated(random_unitary(p[4 * k % 24], p[(4 * k + 1) % 24], p[(4 * k + 2) % 24], p[(4 * k + 3) % 24])))
            .collect();
        let r = rabi_sum_over_states(&rotated, &hm, &y, 0.03, 5).unwrap();
        prop_assert!(rel(r.f_rabi, base.f_rabi) < 1e-10);
        prop_assert!(rel(r.f_larmor, base.f_larmor) < 1e-10);
    }
}

#[test]
fn paramagnetic_term_sign_by_material() {
    let f = FieldConfig::degrees(1.0, 45.0, 0.0, 0.1, 0.03).unwrap();
    let c = BasisCutoff::new(6, 6, 5).unwrap();
    for (name, raises) in [("Si", true), ("Ge", false)] {
        let ws = QubitWorkspace::new(&builtin(name).unwrap(), &reference(), c, f.e0, None, 40).unwrap();
        let z = ws.rabi(f.b_vector(), f.e_ac, Tier::ConvergedZeeman).unwrap().f_rabi;
        let full = ws.rabi(f.b_vector(), f.e_ac, Tier::ConvergedFull).unwrap().f_rabi;
        assert_eq!(full > z, raises, "{name}: zeeman {z}, full {full}");
    }
}

#[test]
fn convergence_deltas_reported() {
    let si = builtin("Si").unwrap();
    let f = FieldConfig::degrees(1.0, 45.0, 0.0, 0.1, 0.03).unwrap();
    let mut values = Vec::new();
    for n in [4, 6, 8] {
        let c = BasisCutoff::new(n, n, n.min(5)).unwrap();
        let ws = QubitWorkspace::new(&si, &reference(), c, f.e0, None, 40).unwrap();
        let r = ws.rabi(f.b_vector(), f.e_ac, Tier::ConvergedFull).unwrap();
        assert!(r.tail_fraction.unwrap() < 0.5);
        values.push(r.f_rabi);
    }
    let d1 = rel(values[1], values[0]);
    let d2 = rel(values[2], values[1]);
    println!("f_R {values:?}, relative changes {d1:.3e} then {d2:.3e}");
    assert!(d2 < d1);
}

#[test]
fn anisotropy_dip_for_in_plane_field() {
    let si = builtin("Si").unwrap();
    let ws = QubitWorkspace::new(&si, &reference(), BasisCutoff::new(6, 6, 5).unwrap(), 0.1, None, 40).unwrap();
    let at = |t: f64, p: f64| {
        let f = FieldConfig::degrees(1.0, t, p, 0.1, 0.03).unwrap();
        ws.rabi(f.b_vector(), f.e_ac, Tier::ConvergedFull).unwrap().f_rabi
    };
    assert!(at(90.0, 0.0) < at(45.0, 0.0));
    let g = ws.g_factors(true);
    assert!(g[2] > g[0] && g[2] > g[1]);
}
