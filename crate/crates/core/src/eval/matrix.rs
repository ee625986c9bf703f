use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corruption::{Category, CorruptionKind, Severity};
use crate::{Error, Real, Result};

/// AP@50 (percent) per corruption kind and severity, plus the clean and
/// (optionally) cloudy references.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EvalMatrix<T> {
    cells: BTreeMap<(CorruptionKind, Severity), T>,
    pub clean: Option<T>,
    pub clouds: Option<T>,
}

fn check_percent<T: Real>(v: T, what: &str) -> Result<T> {
    if v >= T::zero() && v <= T::lit(100.0) {
        Ok(v)
    } else {
        Err(Error::param(format!("{what} AP {v} outside [0, 100]")))
    }
}

impl<T: Real> EvalMatrix<T> {
    pub fn new() -> Self {
        Self { cells: BTreeMap::new(), clean: None, clouds: None }
    }

    /// Every cell set to `v`, clean AP `clean`.
    pub fn constant(v: T, clean: T) -> Result<Self> {
        let mut m = Self::new();
        m.set_clean(clean)?;
        for k in CorruptionKind::ALL {
            for s in Severity::all() {
                m.set(k, s, v)?;
            }
        }
        Ok(m)
    }

    pub fn set(&mut self, kind: CorruptionKind, severity: Severity, ap: T) -> Result<()> {
        let ap = check_percent(ap, &format!("{}/{}", kind.name(), severity))?;
        self.cells.insert((kind, severity), ap);
        Ok(())
    }

    pub fn set_clean(&mut self, ap: T) -> Result<()> {
        self.clean = Some(check_percent(ap, "clean")?);
        Ok(())
    }

    pub fn set_clouds(&mut self, ap: T) -> Result<()> {
        self.clouds = Some(check_percent(ap, "clouds")?);
        Ok(())
    }

    pub fn get(&self, kind: CorruptionKind, severity: Severity) -> Option<T> {
        self.cells.get(&(kind, severity)).copied()
    }

    pub fn cells(&self) -> impl Iterator<Item = (CorruptionKind, Severity, T)> + '_ {
        self.cells.iter().map(|(&(k, s), &v)| (k, s, v))
    }

    /// Missing cells among `kinds`, named `kind/severity`.
    pub fn missing(&self, kinds: impl IntoIterator<Item = CorruptionKind>) -> Vec<String> {
        kinds
            .into_iter()
            .flat_map(|k| Severity::all().map(move |s| (k, s)))
            .filter(|key| !self.cells.contains_key(key))
            .map(|(k, s)| format!("{}/{}", k.name(), s))
            .collect()
    }

    fn require(&self, kinds: impl IntoIterator<Item = CorruptionKind>) -> Result<()> {
        let missing = self.missing(kinds);
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::IncompleteMatrix(missing.join(", ")))
        }
    }

    /// Severity-averaged AP of one kind.
    pub fn kind_mean(&self, kind: CorruptionKind) -> Result<T> {
        mean_of_means(&self.rows([kind])?)
    }

    pub fn require_clean(&self) -> Result<T> {
        self.clean.ok_or_else(|| Error::IncompleteMatrix("clean".into()))
    }

    /// Long-format CSV: `kind,severity,ap` rows, then `clean,,ap` and
    /// `clouds,,ap` when present.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["kind", "severity", "ap"]).expect("in-memory write");
        for (k, s, v) in self.cells() {
            w.write_record([k.name(), &s.to_string(), &v.to_string()]).expect("in-memory write");
        }
        for (name, v) in [("clean", self.clean), ("clouds", self.clouds)] {
            if let Some(v) = v {
                w.write_record([name, "", &v.to_string()]).expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(text.as_bytes());
        let headers = r.headers().map_err(|e| Error::Parse { line: 1, message: e.to_string() })?.clone();
        if headers.iter().collect::<Vec<_>>() != ["kind", "severity", "ap"] {
            return Err(Error::Parse { line: 1, message: "expected header kind,severity,ap".into() });
        }
        let mut m = Self::new();
        for (i, rec) in r.records().enumerate() {
            let line = i + 2;
            let perr = |message: String| Error::Parse { line, message };
            let rec = rec.map_err(|e| perr(e.to_string()))?;
            if rec.len() != 3 {
                return Err(perr(format!("expected 3 fields, found {}", rec.len())));
            }
            let ap: f64 = rec[2].parse().map_err(|_| perr(format!("AP {:?} is not a number", &rec[2])))?;
            let ap = T::lit(ap);
            let res = match (&rec[0], &rec[1]) {
                ("clean", "") => m.set_clean(ap),
                ("clouds", "") => m.set_clouds(ap),
                (kind, sev) => {
                    let kind: CorruptionKind = kind.parse().map_err(|e: Error| perr(e.to_string()))?;
                    let sev: u8 = sev.parse().map_err(|_| perr(format!("severity {sev:?} is not an integer")))?;
                    let sev = Severity::new(sev).map_err(|e| perr(e.to_string()))?;
                    m.set(kind, sev, ap)
                }
            };
            res.map_err(|e| perr(e.to_string()))?;
        }
        Ok(m)
    }
}

/// Average of per-row averages; rows may differ in length but not be
/// empty.
pub fn mean_of_means<T: Real>(rows: &[Vec<T>]) -> Result<T> {
    if rows.is_empty() || rows.iter().any(Vec::is_empty) {
        return Err(Error::param("mean of means needs non-empty rows"));
    }
    let mean = |r: &[T]| r.iter().fold(T::zero(), |a, &v| a + v) / T::from_usize_lossy(r.len());
    let row_means: Vec<T> = rows.iter().map(|r| mean(r)).collect();
    Ok(mean(&row_means))
}

impl<T: Real> EvalMatrix<T> {
    fn rows(&self, kinds: impl IntoIterator<Item = CorruptionKind>) -> Result<Vec<Vec<T>>> {
        let kinds: Vec<CorruptionKind> = kinds.into_iter().collect();
        self.require(kinds.iter().copied())?;
        Ok(kinds.iter().map(|&k| Severity::all().map(|s| self.cells[&(k, s)]).collect()).collect())
    }
}

/// Mean performance under corruption: AP averaged over all severities and
/// then all 19 kinds.
pub fn mpc<T: Real>(m: &EvalMatrix<T>) -> Result<T> {
    mean_of_means(&m.rows(CorruptionKind::ALL)?)
}

fn ratio<T: Real>(num: T, clean: T) -> Result<T> {
    if clean == T::zero() {
        return Err(Error::UndefinedRatio);
    }
    if !(clean > T::zero()) {
        return Err(Error::param(format!("clean AP must be positive, got {clean}")));
    }
    Ok(T::lit(100.0) * num / clean)
}

/// Relative performance under corruption, percent.
pub fn rpc<T: Real>(mpc_value: T, ap_clean: T) -> Result<T> {
    ratio(mpc_value, ap_clean)
}

/// Relative performance of one corruption category, percent.
pub fn category_rpc<T: Real>(m: &EvalMatrix<T>, category: Category, ap_clean: T) -> Result<T> {
    ratio(mean_of_means(&m.rows(category.kinds())?)?, ap_clean)
}

/// Relative performance under real clouds, percent.
pub fn rpc_clouds<T: Real>(ap_clouds: T, ap_clean: T) -> Result<T> {
    ratio(ap_clouds, ap_clean)
}

/// Mean AP over all 19 kinds at each severity.
pub fn severity_curve<T: Real>(m: &EvalMatrix<T>) -> Result<[T; 5]> {
    m.require(CorruptionKind::ALL)?;
    let n = T::lit(CorruptionKind::ALL.len() as f64);
    let mut out = [T::zero(); 5];
    for s in Severity::all() {
        let sum = CorruptionKind::ALL.iter().fold(T::zero(), |acc, &k| acc + m.cells[&(k, s)]);
        out[s.index()] = sum / n;
    }
    Ok(out)
}

/// The robustness summary, with field names as used in result tables.
#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RobustnessReport {
    pub AP_clean: f64,
    pub mPC: f64,
    pub rPC: f64,
    pub rPC_noise: f64,
    pub rPC_blur: f64,
    pub rPC_weather: f64,
    pub rPC_digital: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub AP_clouds: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rPC_clouds: Option<f64>,
    /// Mean AP over kinds at severities 1..=5.
    pub severity_curve: [f64; 5],
    /// Severity-averaged AP per kind.
    pub per_kind: BTreeMap<String, f64>,
}

impl RobustnessReport {
    pub fn from_matrix<T: Real>(m: &EvalMatrix<T>) -> Result<Self> {
        let f = |v: T| v.to_f64().unwrap_or(f64::NAN);
        let clean = m.require_clean()?;
        let mpc_v = mpc(m)?;
        let cat = |c| category_rpc(m, c, clean).map(f);
        let rpc_clouds = m.clouds.map(|c| rpc_clouds(c, clean)).transpose()?;
        Ok(Self {
            AP_clean: f(clean),
            mPC: f(mpc_v),
            rPC: f(rpc(mpc_v, clean)?),
            rPC_noise: cat(Category::Noise)?,
            rPC_blur: cat(Category::Blur)?,
            rPC_weather: cat(Category::Weather)?,
            rPC_digital: cat(Category::Digital)?,
            AP_clouds: m.clouds.map(f),
            rPC_clouds: rpc_clouds.map(f),
            severity_curve: severity_curve(m)?.map(f),
            per_kind: CorruptionKind::ALL
                .iter()
                .map(|&k| Ok((k.name().to_string(), f(m.kind_mean(k)?))))
                .collect::<Result<_>>()?,
        })
    }
}
