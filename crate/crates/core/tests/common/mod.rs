//! Independent reference implementations shared by the integration tests.
//! Everything here is written from the formulas with plain loops over
//! nested vectors, without calling into the library's own objective code.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn hinge(v: f64) -> f64 {
    if v > 0.0 {
        v
    } else {
        0.0
    }
}

/// `(x, 1)`.
pub fn aug(x: &[f64]) -> Vec<f64> {
    let mut z = x.to_vec();
    z.push(1.0);
    z
}

/// Central differences with step `h`.
pub fn fd_gradient(f: impl Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    let mut p = x.to_vec();
    (0..x.len())
        .map(|i| {
            p[i] = x[i] + h;
            let up = f(&p);
            p[i] = x[i] - h;
            let down = f(&p);
            p[i] = x[i];
            (up - down) / (2.0 * h)
        })
        .collect()
}

/// `||a - b|| <= tol * max(||a||, ||b||)`.
pub fn rel_close(a: &[f64], b: &[f64], tol: f64) -> bool {
    let diff: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    norm(&diff) <= tol * norm(a).max(norm(b))
}

pub fn rel_err(a: &[f64], b: &[f64]) -> f64 {
    let diff: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    norm(&diff) / norm(a).max(norm(b)).max(f64::MIN_POSITIVE)
}

pub fn uniform_vec(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(lo..hi)).collect()
}

/// First twin objective on a single pair:
/// `1/2 ||u||^2 + c1/2 (u^T z)^2 + c2 (1 + u^T zhat)_+`.
pub fn pair_f1(u: &[f64], x: &[f64], xhat: &[f64], c1: f64, c2: f64) -> f64 {
    let (z, zh) = (aug(x), aug(xhat));
    0.5 * dot(u, u) + 0.5 * c1 * dot(u, &z).powi(2) + c2 * hinge(1.0 + dot(u, &zh))
}

/// Second twin objective on a single pair:
/// `1/2 ||u||^2 + c3/2 (u^T zhat)^2 + c4 (1 - u^T z)_+`.
pub fn pair_f2(u: &[f64], x: &[f64], xhat: &[f64], c3: f64, c4: f64) -> f64 {
    let (z, zh) = (aug(x), aug(xhat));
    0.5 * dot(u, u) + 0.5 * c3 * dot(u, &zh).powi(2) + c4 * hinge(1.0 - dot(u, &z))
}

/// `f1(u)` over explicit class lists.
pub fn full_f1(u: &[f64], pos: &[Vec<f64>], neg: &[Vec<f64>], c1: f64, c2: f64) -> f64 {
    let mut prox = 0.0;
    for x in pos {
        prox += dot(u, &aug(x)).powi(2);
    }
    let mut loss = 0.0;
    for x in neg {
        loss += hinge(1.0 + dot(u, &aug(x)));
    }
    0.5 * dot(u, u) + c1 / (2.0 * pos.len() as f64) * prox + c2 / neg.len() as f64 * loss
}

/// `f2(u)` over explicit class lists.
pub fn full_f2(u: &[f64], pos: &[Vec<f64>], neg: &[Vec<f64>], c3: f64, c4: f64) -> f64 {
    let mut prox = 0.0;
    for x in neg {
        prox += dot(u, &aug(x)).powi(2);
    }
    let mut loss = 0.0;
    for x in pos {
        loss += hinge(1.0 - dot(u, &aug(x)));
    }
    0.5 * dot(u, u) + c3 / (2.0 * neg.len() as f64) * prox + c4 / pos.len() as f64 * loss
}

/// PEGASOS instantaneous objective `1/2 ||w||^2 + c (1 - y w^T x)_+`.
pub fn pegasos_g(w: &[f64], x: &[f64], y: f64, c: f64) -> f64 {
    0.5 * dot(w, w) + c * hinge(1.0 - y * dot(w, x))
}

/// Smallest margin of `u` to any hinge kink of `f1` over the pair.
pub fn kink_margin_f1(u: &[f64], xhat: &[f64]) -> f64 {
    (1.0 + dot(u, &aug(xhat))).abs()
}

pub fn kink_margin_f2(u: &[f64], x: &[f64]) -> f64 {
    (1.0 - dot(u, &aug(x))).abs()
}

pub fn rows(flat: impl Iterator<Item = Vec<f64>>) -> Vec<Vec<f64>> {
    flat.collect()
}

/// Runs the command-line tool with `args`; returns (status, stdout, stderr).
pub fn run_cli(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = std::process::Command::new(env!("CARGO_BIN_EXE_twinsgd"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("spawn twinsgd");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

/// Like [`run_cli`] but panics unless the exit status is 0.
pub fn cli_ok(args: &[&str]) -> String {
    let (code, out, err) = run_cli(args, &[]);
    assert_eq!(code, 0, "twinsgd {args:?} failed:\n{out}\n{err}");
    out
}

/// Gaussian kernel `exp(-mu ||x - y||^2)`.
pub fn gauss(mu: f64, x: &[f64], y: &[f64]) -> f64 {
    let d: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
    (-mu * d).exp()
}

/// `K(x, R) w + b` computed entry by entry.
pub fn kernel_plane(u: &[f64], reference: &[Vec<f64>], mu: f64, x: &[f64]) -> f64 {
    let r = reference.len();
    let mut v = u[r];
    for (j, xr) in reference.iter().enumerate() {
        v += gauss(mu, x, xr) * u[j];
    }
    v
}

pub fn direct_f1(u: &[f64], reference: &[Vec<f64>], mu: f64, pos: &[Vec<f64>], neg: &[Vec<f64>], c1: f64, c2: f64) -> f64 {
    let prox: f64 = pos.iter().map(|x| kernel_plane(u, reference, mu, x).powi(2)).sum();
    let loss: f64 = neg.iter().map(|x| hinge(1.0 + kernel_plane(u, reference, mu, x))).sum();
    0.5 * dot(u, u) + c1 / (2.0 * pos.len() as f64) * prox + c2 / neg.len() as f64 * loss
}

pub fn direct_f2(u: &[f64], reference: &[Vec<f64>], mu: f64, pos: &[Vec<f64>], neg: &[Vec<f64>], c3: f64, c4: f64) -> f64 {
    let prox: f64 = neg.iter().map(|x| kernel_plane(u, reference, mu, x).powi(2)).sum();
    let loss: f64 = pos.iter().map(|x| hinge(1.0 - kernel_plane(u, reference, mu, x))).sum();
    0.5 * dot(u, u) + c3 / (2.0 * neg.len() as f64) * prox + c4 / pos.len() as f64 * loss
}
