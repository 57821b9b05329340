//! The twin-hyperplane model, its nearest-plane decision rule, evaluation,
//! and the versioned text model file.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::data::{Dataset, Label};
use crate::error::{Error, Result};
use crate::kernel::{GaussianKernel, KernelSpec};
use crate::linalg::{dot, norm};

pub const FORMAT_VERSION: u32 = 1;

/// One plane `w^T phi(x) + b = 0` with its cached `||w||`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    w: Vec<f64>,
    b: f64,
    norm: f64,
}

impl Hyperplane {
    pub fn new(w: Vec<f64>, b: f64) -> Self {
        let norm = norm(&w);
        Hyperplane { w, b, norm }
    }

    pub fn w(&self) -> &[f64] {
        &self.w
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// `w^T phi + b`.
    #[inline]
    pub fn value(&self, phi: &[f64]) -> f64 {
        dot(&self.w, phi) + self.b
    }

    /// `|w^T phi + b| / ||w||`, infinite for a zero normal.
    #[inline]
    pub fn distance(&self, phi: &[f64]) -> f64 {
        if self.norm == 0.0 {
            f64::INFINITY
        } else {
            self.value(phi).abs() / self.norm
        }
    }

    /// Augmented vector `(w, b)`.
    pub fn augmented(&self) -> Vec<f64> {
        let mut u = self.w.clone();
        u.push(self.b);
        u
    }

    pub fn scaled(&self, alpha: f64) -> Hyperplane {
        Hyperplane::new(self.w.iter().map(|v| v * alpha).collect(), self.b * alpha)
    }
}

/// Training provenance carried in the model file.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModelMeta {
    pub config_hash: String,
    pub seed: u64,
    pub converged: [bool; 2],
    pub iterations: u64,
}

/// Anything that maps a raw feature vector to a label.
pub trait Classifier {
    fn input_dim(&self) -> usize;
    fn predict(&self, x: &[f64]) -> Result<Label>;
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwinModel {
    input_dim: usize,
    half1: Hyperplane,
    half2: Hyperplane,
    kernel: Option<GaussianKernel>,
    pub meta: ModelMeta,
}

impl TwinModel {
    /// `input_dim` is the raw feature dimension. With a Gaussian kernel the
    /// planes live in the `r`-dimensional mapped space.
    pub fn new(
        input_dim: usize,
        half1: Hyperplane,
        half2: Hyperplane,
        kernel: Option<KernelSpec>,
        meta: ModelMeta,
    ) -> Result<Self> {
        let kernel = match kernel {
            None | Some(KernelSpec::Linear) => None,
            Some(KernelSpec::Gaussian(g)) => Some(g),
        };
        let expected = match &kernel {
            None => input_dim,
            Some(g) => {
                if g.input_dim() != input_dim {
                    return Err(Error::DimensionMismatch {
                        expected: g.input_dim(),
                        found: input_dim,
                    });
                }
                g.reference_count()
            }
        };
        for h in [&half1, &half2] {
            if h.w.len() != expected {
                return Err(Error::DimensionMismatch {
                    expected,
                    found: h.w.len(),
                });
            }
        }
        Ok(TwinModel {
            input_dim,
            half1,
            half2,
            kernel,
            meta,
        })
    }

    pub fn half1(&self) -> &Hyperplane {
        &self.half1
    }

    pub fn half2(&self) -> &Hyperplane {
        &self.half2
    }

    pub fn kernel(&self) -> Option<&GaussianKernel> {
        self.kernel.as_ref()
    }

    pub fn kernel_spec(&self) -> KernelSpec {
        self.kernel.clone().map_or(KernelSpec::Linear, KernelSpec::Gaussian)
    }

    pub fn converged(&self) -> bool {
        self.meta.converged.iter().all(|&c| c)
    }

    /// The two normalized plane distances of `x`.
    pub fn distances(&self, x: &[f64]) -> Result<(f64, f64)> {
        self.check_dim(x)?;
        Ok(match &self.kernel {
            None => (self.half1.distance(x), self.half2.distance(x)),
            Some(g) => {
                let mut phi = vec![0.0; g.reference_count()];
                g.map_into(x, &mut phi);
                (self.half1.distance(&phi), self.half2.distance(&phi))
            }
        })
    }

    /// Assigns `x` to the class of the nearer plane. Ties, and the degenerate
    /// model with both normals zero, give `Positive`.
    pub fn predict(&self, x: &[f64]) -> Result<Label> {
        let (d1, d2) = self.distances(x)?;
        Ok(if d1 <= d2 || (d1.is_infinite() && d2.is_infinite()) {
            Label::Positive
        } else {
            Label::Negative
        })
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.input_dim {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Same model with each half rescaled by a positive factor.
    pub fn with_scaled_halves(&self, alpha1: f64, alpha2: f64) -> TwinModel {
        TwinModel {
            half1: self.half1.scaled(alpha1),
            half2: self.half2.scaled(alpha2),
            ..self.clone()
        }
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<TwinModel> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        TwinModel::from_text(&text)
    }

    pub fn to_text(&self) -> String {
        let mut body = String::new();
        let (mode, r, mu) = match &self.kernel {
            None => ("linear", 0, 0.0),
            Some(g) => ("gaussian-reduced", g.reference_count(), g.mu()),
        };
        let _ = writeln!(body, "mode {mode}");
        let _ = writeln!(body, "n {}", self.input_dim);
        let _ = writeln!(body, "r {r}");
        let _ = writeln!(body, "mu {}", fmt_real(mu));
        if let Some(g) = &self.kernel {
            for (i, p) in g.reference_points().enumerate() {
                let _ = writeln!(body, "reference_point.{i} {}", fmt_reals(p));
            }
        }
        let _ = writeln!(body, "w1 {}", fmt_reals(&self.half1.w));
        let _ = writeln!(body, "b1 {}", fmt_real(self.half1.b));
        let _ = writeln!(body, "w2 {}", fmt_reals(&self.half2.w));
        let _ = writeln!(body, "b2 {}", fmt_real(self.half2.b));
        write_meta(&mut body, &self.meta);
        seal(&body)
    }

    pub fn from_text(text: &str) -> Result<TwinModel> {
        let fields = unseal(text)?;
        let mode = fields.get("mode")?;
        let n = fields.parse::<usize>("n")?;
        let r = fields.parse::<usize>("r")?;
        let kernel = match mode {
            "linear" => None,
            "gaussian-reduced" => {
                let mu = fields.real("mu")?;
                let mut flat = Vec::with_capacity(r * n);
                for i in 0..r {
                    let p = fields.reals(&format!("reference_point.{i}"))?;
                    if p.len() != n {
                        return Err(Error::Model(format!("reference point {i} has {} values, expected {n}", p.len())));
                    }
                    flat.extend(p);
                }
                Some(KernelSpec::Gaussian(GaussianKernel::new(mu, n, flat)?))
            }
            other => return Err(Error::Model(format!("unknown model mode {other:?}"))),
        };
        let half1 = Hyperplane::new(fields.reals("w1")?, fields.real("b1")?);
        let half2 = Hyperplane::new(fields.reals("w2")?, fields.real("b2")?);
        TwinModel::new(n, half1, half2, kernel, read_meta(&fields)?)
    }
}

impl Classifier for TwinModel {
    fn input_dim(&self) -> usize {
        self.input_dim
    }

    fn predict(&self, x: &[f64]) -> Result<Label> {
        TwinModel::predict(self, x)
    }
}

/// Accuracy and confusion counts on a labeled dataset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    pub accuracy: f64,
    pub true_positive: usize,
    pub false_negative: usize,
    pub true_negative: usize,
    pub false_positive: usize,
}

impl Metrics {
    pub fn total(&self) -> usize {
        self.true_positive + self.false_negative + self.true_negative + self.false_positive
    }
}

pub fn evaluate<C: Classifier + ?Sized>(model: &C, data: &Dataset) -> Result<Metrics> {
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut m = Metrics {
        accuracy: 0.0,
        true_positive: 0,
        false_negative: 0,
        true_negative: 0,
        false_positive: 0,
    };
    for s in data.samples() {
        match (s.label, model.predict(s.features)?) {
            (Label::Positive, Label::Positive) => m.true_positive += 1,
            (Label::Positive, Label::Negative) => m.false_negative += 1,
            (Label::Negative, Label::Negative) => m.true_negative += 1,
            (Label::Negative, Label::Positive) => m.false_positive += 1,
        }
    }
    m.accuracy = (m.true_positive + m.true_negative) as f64 / m.total() as f64;
    Ok(m)
}

// ---------------------------------------------------------------------------
// Text envelope shared by every model file: a version line, `key value`
// lines, and a trailing SHA-256 of everything before the checksum line.

const MAGIC: &str = "# twinsgd model";

pub(crate) fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

pub(crate) fn fmt_reals(v: &[f64]) -> String {
    v.iter().map(|&x| fmt_real(x)).collect::<Vec<_>>().join(" ")
}

/// First 16 hex digits of the SHA-256 of `text`.
pub(crate) fn short_digest(text: &str) -> String {
    digest_hex(text.as_bytes())[..16].to_string()
}

fn digest_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

pub(crate) fn seal(body: &str) -> String {
    let mut out = format!("{MAGIC}\nformat_version {FORMAT_VERSION}\n{body}");
    let sum = digest_hex(out.as_bytes());
    let _ = writeln!(out, "checksum {sum}");
    out
}

pub(crate) struct Fields<'a>(HashMap<&'a str, &'a str>);

pub(crate) fn unseal(text: &str) -> Result<Fields<'_>> {
    let mut lines = text.lines();
    if lines.next() != Some(MAGIC) {
        return Err(Error::Model("missing model file header".into()));
    }
    let version_line = lines.next().ok_or_else(|| Error::Truncated("no format_version".into()))?;
    let version: u32 = version_line
        .strip_prefix("format_version ")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| Error::Model("malformed format_version line".into()))?;
    if version != FORMAT_VERSION {
        return Err(Error::VersionMismatch {
            found: version,
            expected: FORMAT_VERSION,
        });
    }
    let Some(pos) = text.rfind("\nchecksum ") else {
        return Err(Error::Truncated("no checksum line".into()));
    };
    let (sealed, tail) = text.split_at(pos + 1);
    let stored = tail.trim_start_matches("checksum ").trim();
    if stored.len() != 64 {
        return Err(Error::Truncated("checksum line incomplete".into()));
    }
    if digest_hex(sealed.as_bytes()) != stored {
        return Err(Error::Checksum);
    }
    let mut map = HashMap::new();
    for line in sealed.lines().skip(2) {
        let (k, v) = line.split_once(' ').unwrap_or((line, ""));
        map.insert(k, v);
    }
    Ok(Fields(map))
}

impl<'a> Fields<'a> {
    pub(crate) fn get(&self, key: &str) -> Result<&'a str> {
        self.0
            .get(key)
            .copied()
            .ok_or_else(|| Error::Truncated(format!("missing field {key}")))
    }

    pub(crate) fn parse<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        self.get(key)?
            .trim()
            .parse()
            .map_err(|_| Error::Model(format!("field {key} is malformed")))
    }

    pub(crate) fn real(&self, key: &str) -> Result<f64> {
        self.parse(key)
    }

    pub(crate) fn reals(&self, key: &str) -> Result<Vec<f64>> {
        self.get(key)?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Model(format!("field {key} holds a non-number {t:?}"))))
            .collect()
    }
}

pub(crate) fn write_meta(body: &mut String, meta: &ModelMeta) {
    let _ = writeln!(body, "meta.config_hash {}", meta.config_hash);
    let _ = writeln!(body, "meta.seed {}", meta.seed);
    let _ = writeln!(body, "meta.converged {} {}", meta.converged[0], meta.converged[1]);
    let _ = writeln!(body, "meta.iterations {}", meta.iterations);
}

pub(crate) fn read_meta(fields: &Fields<'_>) -> Result<ModelMeta> {
    let conv: Vec<bool> = fields
        .get("meta.converged")?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Model("meta.converged is malformed".into())))
        .collect::<Result<_>>()?;
    let [c1, c2] = conv[..] else {
        return Err(Error::Model("meta.converged needs two flags".into()));
    };
    Ok(ModelMeta {
        config_hash: fields.get("meta.config_hash")?.trim().to_string(),
        seed: fields.parse("meta.seed")?,
        converged: [c1, c2],
        iterations: fields.parse("meta.iterations")?,
    })
}
