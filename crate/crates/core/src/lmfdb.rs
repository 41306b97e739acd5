//! Curve data from the LMFDB API, behind a file cache and a directory of
//! bundled fixtures.
//!
//! A label is resolved from the fixture directory, then the cache, then the
//! network (unless the client is offline). Fixtures and cache entries share
//! one format, `{"label", "curvedata", "classdata"}`, holding the raw API
//! records, and are named by the percent-encoded label.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::thread;
use std::time::Duration;

use percent_encoding::{utf8_percent_encode, AsciiSet, NON_ALPHANUMERIC};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::arith;
use crate::hypotheses::{self, CurveData, HypothesisError, ReductionType};

pub const DEFAULT_BASE_URL: &str = "https://www.lmfdb.org/api";
/// Environment variable overriding the base URL.
pub const BASE_URL_ENV: &str = "LMFDB_API_URL";

#[derive(Debug, Error)]
pub enum ClientError {
    #[error("not found: {0}")]
    NotFound(String),
    #[error("network error after {attempts} attempts: {message}")]
    Network { attempts: u32, message: String },
    #[error("protocol error: {0}")]
    Protocol(String),
    #[error("offline and no fixture or cache entry for {0}")]
    OfflineMiss(String),
    #[error("cache: {0}")]
    Cache(#[from] std::io::Error),
    #[error("no a_{p} recorded for {label}")]
    MissingAp { label: String, p: u64 },
    #[error("{label} has bad reduction at {p}")]
    BadReduction { label: String, p: u64 },
    #[error(transparent)]
    Hypothesis(#[from] HypothesisError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClientConfig {
    pub base_url: String,
    pub timeout: Duration,
    /// Retries after the first attempt.
    pub retries: u32,
    /// Delay before the first retry; doubled for each later one.
    pub backoff: Duration,
    pub cache_dir: Option<PathBuf>,
    pub fixture_dir: Option<PathBuf>,
    pub offline: bool,
}

impl Default for ClientConfig {
    fn default() -> Self {
        Self {
            base_url: std::env::var(BASE_URL_ENV).unwrap_or_else(|_| DEFAULT_BASE_URL.to_string()),
            timeout: Duration::from_secs(10),
            retries: 3,
            backoff: Duration::from_millis(250),
            cache_dir: None,
            fixture_dir: Some(bundled_fixture_dir()),
            offline: false,
        }
    }
}

/// The fixtures shipped with the crate.
pub fn bundled_fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join("lmfdb")
}

/// Where a record came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Fixture,
    Cache,
    Network,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Fixture => "fixture",
            Provenance::Cache => "cache",
            Provenance::Network => "network",
        })
    }
}

/// Raw API records for one curve, as stored on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveRecord {
    pub label: String,
    pub curvedata: Value,
    pub classdata: Value,
}

impl CurveRecord {
    /// Reads `a_p` for good primes below 100, the conductor and the rank.
    pub fn to_curve_data(&self) -> Result<CurveData, ClientError> {
        let conductor = self
            .curvedata
            .get("conductor")
            .and_then(Value::as_u64)
            .filter(|&n| n > 0)
            .ok_or_else(|| ClientError::Protocol("curvedata.conductor missing".into()))?;
        let rank = match self.curvedata.get("rank") {
            None | Some(Value::Null) => None,
            Some(v) => Some(
                v.as_u64()
                    .and_then(|r| u32::try_from(r).ok())
                    .ok_or_else(|| ClientError::Protocol("curvedata.rank is not a count".into()))?,
            ),
        };
        let aplist = self
            .classdata
            .get("aplist")
            .and_then(Value::as_array)
            .ok_or_else(|| ClientError::Protocol("classdata.aplist missing".into()))?;
        let primes = (2..100u64).filter(|&q| arith::is_prime(q));
        let mut ap = std::collections::BTreeMap::new();
        for (q, v) in primes.zip(aplist) {
            let a = v
                .as_i64()
                .ok_or_else(|| ClientError::Protocol(format!("a_{q} is not an integer")))?;
            if !hypotheses::within_hasse_bound(a, q) {
                return Err(ClientError::Protocol(format!("a_{q} = {a} violates the Hasse bound")));
            }
            if conductor % q != 0 {
                ap.insert(q, a);
            }
        }
        Ok(CurveData {
            label: self.label.clone(),
            ap,
            rank,
            conductor: Some(conductor),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LabelKind {
    Lmfdb,
    Cremona,
}

/// `N.c<k>` (LMFDB) or `Nc<k>` (Cremona), with `c` a lowercase class code.
fn label_kind(label: &str) -> Option<LabelKind> {
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let n = label.bytes().take_while(u8::is_ascii_digit).count();
    if n == 0 || label.starts_with('0') {
        return None;
    }
    let (rest, kind) = match label[n..].strip_prefix('.') {
        Some(r) => (r, LabelKind::Lmfdb),
        None => (&label[n..], LabelKind::Cremona),
    };
    let c = rest.bytes().take_while(u8::is_ascii_lowercase).count();
    (c > 0 && digits(&rest[c..])).then_some(kind)
}

pub fn is_valid_label(label: &str) -> bool {
    label_kind(label).is_some()
}

/// Unreserved URL characters stay as they are.
const ENCODE: &AsciiSet = &NON_ALPHANUMERIC.remove(b'.').remove(b'-').remove(b'_').remove(b'~');

fn file_name(label: &str) -> String {
    format!("{}.json", utf8_percent_encode(label, ENCODE))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fetched {
    pub curve: CurveData,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub label: String,
    pub p: u64,
    pub ap: i64,
    pub reduction: ReductionType,
    pub provenance: Provenance,
}

pub struct Client {
    cfg: ClientConfig,
    agent: ureq::Agent,
}

impl Client {
    pub fn new(cfg: ClientConfig) -> Self {
        let agent = ureq::Agent::config_builder()
            .timeout_global(Some(cfg.timeout))
            .http_status_as_error(false)
            .build()
            .into();
        Self { cfg, agent }
    }

    pub fn config(&self) -> &ClientConfig {
        &self.cfg
    }

    pub fn fetch_curve(&self, label: &str) -> Result<Fetched, ClientError> {
        let kind = label_kind(label).ok_or_else(|| ClientError::NotFound(format!("{label:?} is not a curve label")))?;
        let name = file_name(label);
        for (dir, provenance) in [
            (&self.cfg.fixture_dir, Provenance::Fixture),
            (&self.cfg.cache_dir, Provenance::Cache),
        ] {
            if let Some(record) = dir.as_ref().map(|d| read_record(&d.join(&name))).transpose()?.flatten() {
                return Ok(Fetched {
                    curve: record.to_curve_data()?,
                    provenance,
                });
            }
        }
        if self.cfg.offline {
            return Err(ClientError::OfflineMiss(label.to_string()));
        }
        let record = self.download(label, kind)?;
        let curve = record.to_curve_data()?;
        if let Some(dir) = &self.cfg.cache_dir {
            write_record(dir, &name, &record)?;
        }
        Ok(Fetched {
            curve,
            provenance: Provenance::Network,
        })
    }

    fn download(&self, label: &str, kind: LabelKind) -> Result<CurveRecord, ClientError> {
        let field = match kind {
            LabelKind::Lmfdb => "lmfdb_label",
            LabelKind::Cremona => "Clabel",
        };
        let enc = |s: &str| utf8_percent_encode(s, ENCODE).to_string();
        let curvedata = self
            .query(&format!("ec_curvedata/?{field}={}&_format=json", enc(label)))?
            .ok_or_else(|| ClientError::NotFound(label.to_string()))?;
        let iso = curvedata
            .get("lmfdb_iso")
            .and_then(Value::as_str)
            .ok_or_else(|| ClientError::Protocol("curvedata.lmfdb_iso missing".into()))?
            .to_string();
        let classdata = self
            .query(&format!("ec_classdata/?lmfdb_iso={}&_format=json", enc(&iso)))?
            .ok_or_else(|| ClientError::Protocol(format!("no class data for {iso}")))?;
        Ok(CurveRecord {
            label: label.to_string(),
            curvedata,
            classdata,
        })
    }

    /// First record of a query, or `None` when the result set is empty.
    fn query(&self, path: &str) -> Result<Option<Value>, ClientError> {
        let url = format!("{}/{path}", self.cfg.base_url.trim_end_matches('/'));
        let attempts = self.cfg.retries + 1;
        let mut message = String::new();
        for attempt in 0..attempts {
            if attempt > 0 {
                thread::sleep(self.cfg.backoff * 2u32.saturating_pow(attempt - 1));
            }
            match self.agent.get(&url).call() {
                Ok(mut resp) => {
                    let status = resp.status().as_u16();
                    if status == 404 {
                        return Ok(None);
                    }
                    if status >= 500 {
                        message = format!("HTTP {status} from {url}");
                        continue;
                    }
                    if status != 200 {
                        return Err(ClientError::Protocol(format!("HTTP {status} from {url}")));
                    }
                    let body = resp
                        .body_mut()
                        .read_to_string()
                        .map_err(|e| ClientError::Protocol(e.to_string()))?;
                    return first_record(&body);
                }
                Err(e) => message = e.to_string(),
            }
        }
        Err(ClientError::Network { attempts, message })
    }

    /// Reduction type at `p` of a fetched curve.
    pub fn classify(&self, label: &str, p: u64) -> Result<Classification, ClientError> {
        classify_curve(&self.fetch_curve(label)?, p)
    }
}

fn first_record(body: &str) -> Result<Option<Value>, ClientError> {
    let doc: Value = serde_json::from_str(body).map_err(|e| ClientError::Protocol(e.to_string()))?;
    let data = doc
        .get("data")
        .and_then(Value::as_array)
        .ok_or_else(|| ClientError::Protocol("response has no data array".into()))?;
    match data.first() {
        None => Ok(None),
        Some(v) if v.is_object() => Ok(Some(v.clone())),
        Some(_) => Err(ClientError::Protocol("data entries must be objects".into())),
    }
}

fn read_record(path: &Path) -> Result<Option<CurveRecord>, ClientError> {
    match fs::read(path) {
        Ok(bytes) => serde_json::from_slice(&bytes)
            .map(Some)
            .map_err(|e| ClientError::Protocol(format!("{}: {e}", path.display()))),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn write_record(dir: &Path, name: &str, record: &CurveRecord) -> Result<(), ClientError> {
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer_pretty(&mut tmp, record).map_err(std::io::Error::from)?;
    tmp.write_all(b"\n")?;
    tmp.persist(dir.join(name)).map_err(|e| e.error)?;
    Ok(())
}

pub fn classify_curve(fetched: &Fetched, p: u64) -> Result<Classification, ClientError> {
    let c = &fetched.curve;
    if c.has_bad_reduction_at(p) {
        return Err(ClientError::BadReduction {
            label: c.label.clone(),
            p,
        });
    }
    let ap = *c.ap.get(&p).ok_or_else(|| ClientError::MissingAp {
        label: c.label.clone(),
        p,
    })?;
    Ok(Classification {
        label: c.label.clone(),
        p,
        ap,
        reduction: hypotheses::reduction_type(ap, p)?,
        provenance: fetched.provenance,
    })
}
