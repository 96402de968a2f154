//! 4×4 matrices acting on the `j = 3/2` multiplet, ordered (+3/2, +1/2, −1/2, −3/2).

use crate::hamiltonian::Orientation;
use crate::materials::MaterialParams;
use crate::C64;

pub type Spin4 = [[C64; 4]; 4];

const ZERO: C64 = C64::new(0.0, 0.0);

pub fn zero() -> Spin4 {
    [[ZERO; 4]; 4]
}

pub fn identity() -> Spin4 {
    let mut m = zero();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = C64::new(1.0, 0.0);
    }
    m
}

pub fn scale(m: &Spin4, s: C64) -> Spin4 {
    let mut out = *m;
    out.iter_mut().flatten().for_each(|x| *x *= s);
    out
}

pub fn add(a: &Spin4, b: &Spin4) -> Spin4 {
    let mut out = *a;
    for (o, x) in out.iter_mut().flatten().zip(b.iter().flatten()) {
        *o += x;
    }
    out
}

fn real(entries: &[(usize, usize, f64)]) -> Spin4 {
    let mut m = zero();
    for &(i, j, v) in entries {
        m[i][j] = C64::new(v, 0.0);
    }
    m
}

pub fn j_z() -> Spin4 {
    real(&[(0, 0, 1.5), (1, 1, 0.5), (2, 2, -0.5), (3, 3, -1.5)])
}

pub fn j_plus() -> Spin4 {
    let s3 = 3f64.sqrt();
    real(&[(0, 1, s3), (1, 2, 2.0), (2, 3, s3)])
}

pub fn j_minus() -> Spin4 {
    let s3 = 3f64.sqrt();
    real(&[(1, 0, s3), (2, 1, 2.0), (3, 2, s3)])
}

/// `b·J` for a real vector `b`.
pub fn dot_j(b: [f64; 3]) -> Spin4 {
    let bp = C64::new(b[0], b[1]);
    let bm = bp.conj();
    add(
        &scale(&j_z(), C64::new(b[2], 0.0)),
        &add(&scale(&j_plus(), 0.5 * bm), &scale(&j_minus(), 0.5 * bp)),
    )
}

/// Spin matrices `Γ_ij` such that the kinetic Hamiltonian reads
/// `(ħ²/2m₀) Σ_ij Γ_ij k_i k_j` with the P, Q, R, S blocks of the
/// Luttinger-Kohn model. `Γ_ij = Γ_ji` and each is Hermitian.
pub fn luttinger_gammas(m: &MaterialParams, orientation: Orientation) -> [[Spin4; 3]; 3] {
    let s3 = 3f64.sqrt();
    let (g1, g2, g3) = (m.gamma1, m.gamma2, m.gamma3);
    // Only the R block depends on the in-plane crystal axes.
    let (ga, gb) = match orientation {
        Orientation::Dot110 => (g3, g2),
        Orientation::Dot100 => (g2, g3),
    };
    let c = |re: f64, im: f64| C64::new(re, im);
    let z = c(0.0, 0.0);
    let cp = [[c(g1, 0.0), z, z], [z, c(g1, 0.0), z], [z, z, c(g1, 0.0)]];
    let cq = [[c(g2, 0.0), z, z], [z, c(g2, 0.0), z], [z, z, c(-2.0 * g2, 0.0)]];
    let cr = [[c(-s3 * ga, 0.0), c(0.0, s3 * gb), z], [c(0.0, s3 * gb), c(s3 * ga, 0.0), z], [z, z, z]];
    let s = s3 * g3;
    let cs = [[z, z, c(s, 0.0)], [z, z, c(0.0, -s)], [c(s, 0.0), c(0.0, -s), z]];

    let q_spin = real(&[(0, 0, 1.0), (1, 1, -1.0), (2, 2, -1.0), (3, 3, 1.0)]);
    let e_r = real(&[(0, 2, 1.0), (1, 3, 1.0)]);
    let e_s = real(&[(0, 1, -1.0), (2, 3, 1.0)]);
    let transpose = |m: &Spin4| {
        let mut t = zero();
        for i in 0..4 {
            for j in 0..4 {
                t[j][i] = m[i][j];
            }
        }
        t
    };
    let (e_r_t, e_s_t) = (transpose(&e_r), transpose(&e_s));

    let mut out = [[zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut g = scale(&identity(), cp[i][j]);
            g = add(&g, &scale(&q_spin, cq[i][j]));
            g = add(&g, &scale(&e_r, cr[i][j]));
            g = add(&g, &scale(&e_r_t, cr[i][j].conj()));
            g = add(&g, &scale(&e_s, cs[i][j]));
            g = add(&g, &scale(&e_s_t, cs[i][j].conj()));
            out[i][j] = g;
        }
    }
    out
}
