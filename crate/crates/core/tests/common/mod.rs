//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use boxqubit::constants::{E_SCALE, H_PLANCK, MU_B};
use boxqubit::hamiltonian::spin::{self, Spin4};
use boxqubit::minimal::{dipole_length, MinimalModel};
use boxqubit::{BasisCutoff, BoxGeometry, FieldConfig, MaterialParams, Orientation, C64};
use rand::Rng;

pub fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Random material satisfying the validation rules.
pub fn random_material(rng: &mut impl Rng) -> MaterialParams {
    let g1 = rng.random_range(3.0..30.0);
    let g2 = rng.random_range(0.2..g1 / 2.2);
    let g3 = rng.random_range(0.2..20.0);
    let kappa = rng.random_range(-3.0..10.0);
    let m = MaterialParams::new("random", g1, g2, g3, kappa);
    m.validate().unwrap();
    m
}

/// Random thin box, `Lz ≤ min(Lx, Ly)/2`. The Rabi frequency vanishes
/// identically when `Lz` equals `Lx` or `Ly`, so relative comparisons near
/// cubic boxes only measure round-off.
pub fn random_geometry(rng: &mut impl Rng) -> BoxGeometry {
    let o = if rng.random_bool(0.5) { Orientation::Dot110 } else { Orientation::Dot100 };
    let (lx, ly): (f64, f64) = (rng.random_range(10.0..60.0), rng.random_range(10.0..60.0));
    let lz = rng.random_range(2.0..0.5 * lx.min(ly));
    BoxGeometry::new(lx, ly, lz, o).unwrap()
}

pub fn random_fields(rng: &mut impl Rng) -> FieldConfig {
    FieldConfig::new(
        rng.random_range(0.1..2.0),
        rng.random_range(0.0..PI),
        rng.random_range(0.0..2.0 * PI),
        rng.random_range(0.01..0.5),
        rng.random_range(0.01..0.1),
    )
    .unwrap()
}

type V8 = [C64; 8];

fn zero8() -> V8 {
    [C64::new(0.0, 0.0); 8]
}

fn dot(a: &V8, b: &V8) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn apply(m: &[[C64; 8]; 8], v: &V8) -> V8 {
    let mut out = zero8();
    for i in 0..8 {
        for j in 0..8 {
            out[i] += m[i][j] * v[j];
        }
    }
    out
}

/// Rabi frequency at first order in `E0`, summing directly over the first-order
/// corrected minimal-basis states `|ĩ±, σ⟩ = |i±, σ⟩ + Σ λ |j±′, σ⟩` with the
/// Zeeman term. Every state is kept as `v₀ + E0·v₁` and the amplitude is
/// differentiated exactly.
pub fn direct_linearized_rabi(material: &MaterialParams, geometry: &BoxGeometry, fields: &FieldConfig) -> f64 {
    let model = MinimalModel::new(material, geometry);
    let q = model.qubit(fields);
    let Some((alpha, beta)) = q.alpha_beta else { return 0.0 };
    let sb = model.subbands;
    let energy = |i: usize, plus: bool| if plus { sb[i].e_plus } else { sb[i].e_minus };

    // Unperturbed state: index = jz + 4·subband, jz order (+3/2, +1/2, −1/2, −3/2).
    let state = |i: usize, plus: bool, up: bool| -> V8 {
        let (h, l) = (sb[i].h, sb[i].l);
        let o = 4 * i;
        let (a, b) = if up { (o, o + 2) } else { (o + 3, o + 1) };
        let mut v = zero8();
        if plus {
            v[a] = C64::from(-l);
            v[b] = C64::from(h);
        } else {
            v[a] = C64::from(h);
            v[b] = C64::from(l);
        }
        v
    };
    // Static-field coupling per unit E0, and the dipole operator.
    let mut he = [[C64::new(0.0, 0.0); 8]; 8];
    let mut y = [[C64::new(0.0, 0.0); 8]; 8];
    let d = dipole_length(geometry.ly);
    for s in 0..4 {
        he[s][4 + s] = C64::from(E_SCALE * d);
        he[4 + s][s] = C64::from(E_SCALE * d);
        y[s][4 + s] = C64::from(-d);
        y[4 + s][s] = C64::from(-d);
    }
    let zs = spin::scale(&spin::dot_j(fields.b_vector()), C64::from(2.0 * material.kappa * MU_B));
    let mut hz = [[C64::new(0.0, 0.0); 8]; 8];
    for blk in 0..2 {
        for s in 0..4 {
            for t in 0..4 {
                hz[4 * blk + s][4 * blk + t] = zs[s][t];
            }
        }
    }
    let perturbed = |i: usize, plus: bool, up: bool| -> (V8, V8) {
        let v0 = state(i, plus, up);
        let j = 1 - i;
        let mut v1 = zero8();
        for p2 in [false, true] {
            let w = state(j, p2, up);
            let c = dot(&w, &apply(&he, &v0)) / (energy(i, plus) - energy(j, p2));
            for k in 0..8 {
                v1[k] += c * w[k];
            }
        }
        (v0, v1)
    };
    let combine = |a: C64, x: &(V8, V8), b: C64, z: &(V8, V8)| -> (V8, V8) {
        let mut r = (zero8(), zero8());
        for k in 0..8 {
            r.0[k] = a * x.0[k] + b * z.0[k];
            r.1[k] = a * x.1[k] + b * z.1[k];
        }
        r
    };
    let (gu, gd) = (perturbed(0, false, true), perturbed(0, false, false));
    let beta = C64::from(beta);
    let s0 = combine(alpha, &gu, beta, &gd);
    let s1 = combine(-beta, &gu, alpha.conj(), &gd);
    // d/dE0 of ⟨a|O|b⟩ with a = a₀ + E0 a₁, b = b₀ + E0 b₁.
    let elem = |a: &(V8, V8), o: &[[C64; 8]; 8], b: &(V8, V8)| -> (C64, C64) {
        let (ob0, ob1) = (apply(o, &b.0), apply(o, &b.1));
        (dot(&a.0, &ob0), dot(&a.1, &ob0) + dot(&a.0, &ob1))
    };
    let mut slope = C64::new(0.0, 0.0);
    for (i, plus) in [(0, true), (1, false), (1, true)] {
        for up in [true, false] {
            let vn = perturbed(i, plus, up);
            let (y1n, hn0) = (elem(&s1, &y, &vn), elem(&vn, &hz, &s0));
            let (h1n, yn0) = (elem(&s1, &hz, &vn), elem(&vn, &y, &s0));
            let d_term = y1n.1 * hn0.0 + y1n.0 * hn0.1 + h1n.1 * yn0.0 + h1n.0 * yn0.1;
            slope += d_term / (energy(0, false) - energy(i, plus));
        }
    }
    E_SCALE * fields.e_ac * (slope * fields.e0).norm() / H_PLANCK
}

/// Composite Gauss-Legendre quadrature of `f` on `[a, b]`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    // 8-point nodes and weights on [−1, 1].
    const X: [f64; 4] = [0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363];
    const W: [f64; 4] = [0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763];
    let panels = 64;
    let h = (b - a) / panels as f64;
    let mut s = 0.0;
    for p in 0..panels {
        let c = a + h * (p as f64 + 0.5);
        for k in 0..4 {
            for sign in [-1.0, 1.0] {
                s += W[k] * f(c + sign * X[k] * h / 2.0);
            }
        }
    }
    s * h / 2.0
}

/// `χ_n(u)` and its derivative on `[−L/2, L/2]`.
fn chi(n: usize, l: f64, u: f64) -> (f64, f64) {
    let k = n as f64 * PI / l;
    let arg = k * (u + l / 2.0);
    let a = (2.0 / l).sqrt();
    (a * arg.sin(), a * k * arg.cos())
}

/// Paramagnetic matrix `μ_B Σ_ij Γ_ij (k_i A_j + A_j k_i)`, `A = B×r/2`, with
/// every envelope integral done by quadrature on sampled wavefunctions.
pub fn paramagnetic_by_quadrature(
    material: &MaterialParams,
    geometry: &BoxGeometry,
    cutoff: BasisCutoff,
    b: [f64; 3],
) -> Vec<Vec<C64>> {
    let lengths = geometry.lengths();
    let n = cutoff.axes();
    // One-dimensional integrals per axis: overlap, ∫χ_a u χ_b, ∫χ_a χ_b′, ∫χ_a u χ_b′.
    let table = |axis: usize, kind: usize| -> Vec<Vec<f64>> {
        let l = lengths[axis];
        (1..=n[axis])
            .map(|p| {
                (1..=n[axis])
                    .map(|q| {
                        integrate(
                            |u| {
                                let (fa, _) = chi(p, l, u);
                                let (fb, db) = chi(q, l, u);
                                match kind {
                                    0 => fa * fb,
                                    1 => fa * u * fb,
                                    2 => fa * db,
                                    _ => fa * u * db,
                                }
                            },
                            -l / 2.0,
                            l / 2.0,
                        )
                    })
                    .collect()
            })
            .collect()
    };
    let t: Vec<Vec<Vec<Vec<f64>>>> = (0..3).map(|ax| (0..4).map(|k| table(ax, k)).collect()).collect();
    let gammas = spin::luttinger_gammas(material, geometry.orientation);
    let a = [
        [0.0, -b[2] / 2.0, b[1] / 2.0],
        [b[2] / 2.0, 0.0, -b[0] / 2.0],
        [-b[1] / 2.0, b[0] / 2.0, 0.0],
    ];
    // ⟨α|k_i r_l + r_l k_i|β⟩ = −i ∫ χ_α (∂_i(r_l χ_β) + r_l ∂_i χ_β).
    let envelope = |ea: [usize; 3], eb: [usize; 3], i: usize, l: usize| -> C64 {
        let mut prod = 1.0;
        for ax in 0..3 {
            let (p, q) = (ea[ax] - 1, eb[ax] - 1);
            let v = if ax == i && ax == l {
                // ∂(uχ) + u∂χ = χ + 2u∂χ
                t[ax][0][p][q] + 2.0 * t[ax][3][p][q]
            } else if ax == i {
                2.0 * t[ax][2][p][q]
            } else if ax == l {
                t[ax][1][p][q]
            } else {
                t[ax][0][p][q]
            };
            prod *= v;
        }
        C64::new(0.0, -prod)
    };
    let dim = cutoff.dim();
    let mut h = vec![vec![C64::new(0.0, 0.0); dim]; dim];
    for ra in 0..cutoff.envelope_dim() {
        for rb in 0..cutoff.envelope_dim() {
            let (ea, eb) = (cutoff.envelope_numbers(ra), cutoff.envelope_numbers(rb));
            let mut s: Spin4 = spin::zero();
            for i in 0..3 {
                for j in 0..3 {
                    let mut c = C64::new(0.0, 0.0);
                    for l in 0..3 {
                        if a[j][l] != 0.0 {
                            c += envelope(ea, eb, i, l) * a[j][l];
                        }
                    }
                    s = spin::add(&s, &spin::scale(&gammas[i][j], c * MU_B));
                }
            }
            for x in 0..4 {
                for y in 0..4 {
                    h[4 * ra + x][4 * rb + y] = s[x][y];
                }
            }
        }
    }
    h
}
