use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant};

use angrank_core::weil::parse_label;

use crate::record::parse_response;
use crate::{LmfdbError, LmfdbRecord, Result};

pub const DEFAULT_BASE_URL: &str = "https://www.lmfdb.org/api";
pub const DEFAULT_TABLE: &str = "av_fq_isog";

#[derive(Debug, Clone)]
pub struct ClientConfig {
    pub base_url: String,
    pub table: String,
    pub cache_dir: PathBuf,
    /// never touch the network; cache misses are errors
    pub offline: bool,
    pub max_attempts: u32,
    /// first retry delay, doubled per attempt
    pub backoff: Duration,
    /// per-host request cap
    pub requests_per_second: f64,
    pub timeout: Duration,
}

impl Default for ClientConfig {
    fn default() -> Self {
        ClientConfig {
            base_url: DEFAULT_BASE_URL.into(),
            table: DEFAULT_TABLE.into(),
            cache_dir: PathBuf::from("lmfdb-cache"),
            offline: false,
            max_attempts: 3,
            backoff: Duration::from_millis(500),
            requests_per_second: 2.0,
            timeout: Duration::from_secs(30),
        }
    }
}

pub struct Client {
    cfg: ClientConfig,
    agent: ureq::Agent,
    next_slot: Mutex<HashMap<String, Instant>>,
    requests: AtomicUsize,
}

enum Attempt {
    Retry(String),
    Fatal(LmfdbError),
}

impl Client {
    pub fn new(cfg: ClientConfig) -> Self {
        let agent = ureq::Agent::config_builder()
            .timeout_global(Some(cfg.timeout))
            .http_status_as_error(false)
            .build()
            .into();
        Client { cfg, agent, next_slot: Mutex::new(HashMap::new()), requests: AtomicUsize::new(0) }
    }

    pub fn config(&self) -> &ClientConfig {
        &self.cfg
    }

    /// Number of HTTP requests issued so far.
    pub fn requests_made(&self) -> usize {
        self.requests.load(Ordering::SeqCst)
    }

    pub fn cache_path(&self, label: &str) -> PathBuf {
        self.cfg.cache_dir.join(format!("{label}.json"))
    }

    pub fn cached(&self, label: &str) -> Result<Option<LmfdbRecord>> {
        let path = self.cache_path(label);
        match fs::read_to_string(&path) {
            Ok(s) => Ok(Some(LmfdbRecord::from_json(&s)?)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// Cache first, then the API (unless offline); fresh records are cached.
    pub fn fetch_isogeny_class(&self, label: &str) -> Result<LmfdbRecord> {
        if parse_label(label).is_err() {
            return Err(LmfdbError::NotFound(label.to_string()));
        }
        if let Some(rec) = self.cached(label)? {
            return Ok(rec);
        }
        if self.cfg.offline {
            return Err(LmfdbError::Offline(label.to_string()));
        }
        let body = self.get_with_retries(label)?;
        let now = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
        let rec = parse_response(label, &body, &now)?;
        self.store(&rec)?;
        Ok(rec)
    }

    pub fn store(&self, rec: &LmfdbRecord) -> Result<()> {
        fs::create_dir_all(&self.cfg.cache_dir)?;
        let path = self.cache_path(&rec.label);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, rec.to_canonical_json())?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    fn url(&self, label: &str) -> String {
        format!("{}/{}/?label={}&_format=json", self.cfg.base_url.trim_end_matches('/'), self.cfg.table, label)
    }

    fn get_with_retries(&self, label: &str) -> Result<String> {
        let url = self.url(label);
        let mut delay = self.cfg.backoff;
        let mut last = String::new();
        for attempt in 1..=self.cfg.max_attempts {
            match self.get_once(label, &url) {
                Ok(body) => return Ok(body),
                Err(Attempt::Fatal(e)) => return Err(e),
                Err(Attempt::Retry(msg)) => last = msg,
            }
            if attempt < self.cfg.max_attempts {
                thread::sleep(delay);
                delay *= 2;
            }
        }
        Err(LmfdbError::Http { label: label.to_string(), attempts: self.cfg.max_attempts, message: last })
    }

    fn get_once(&self, label: &str, url: &str) -> std::result::Result<String, Attempt> {
        self.throttle(host_of(url));
        self.requests.fetch_add(1, Ordering::SeqCst);
        let mut resp = self.agent.get(url).call().map_err(|e| Attempt::Retry(e.to_string()))?;
        let status = resp.status().as_u16();
        match status {
            200..=299 => resp.body_mut().read_to_string().map_err(|e| Attempt::Retry(e.to_string())),
            404 => Err(Attempt::Fatal(LmfdbError::NotFound(label.to_string()))),
            429 | 500..=599 => Err(Attempt::Retry(format!("http status {status}"))),
            _ => Err(Attempt::Fatal(LmfdbError::Http {
                label: label.to_string(),
                attempts: 1,
                message: format!("http status {status}"),
            })),
        }
    }

    /// Reserves the next free request slot for `host` and sleeps until it.
    fn throttle(&self, host: &str) {
        if self.cfg.requests_per_second <= 0.0 {
            return;
        }
        let gap = Duration::from_secs_f64(1.0 / self.cfg.requests_per_second);
        let wait = {
            let mut slots = self.next_slot.lock().unwrap_or_else(|e| e.into_inner());
            let now = Instant::now();
            let slot = slots.get(host).copied().filter(|&t| t > now).unwrap_or(now);
            slots.insert(host.to_string(), slot + gap);
            slot - now
        };
        if !wait.is_zero() {
            thread::sleep(wait);
        }
    }
}

fn host_of(url: &str) -> &str {
    let rest = url.split_once("://").map_or(url, |(_, r)| r);
    rest.split('/').next().unwrap_or(rest)
}

/// Loads every `*.json` record in `dir`, sorted by label.
pub fn load_cache_dir(dir: &Path) -> Result<Vec<LmfdbRecord>> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if path.extension().and_then(|e| e.to_str()) == Some("json") {
            out.push(LmfdbRecord::from_json(&fs::read_to_string(&path)?)?);
        }
    }
    out.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(out)
}
