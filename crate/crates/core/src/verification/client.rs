use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant};

use serde::Deserialize;

/// Default environment variable holding the dictionary API key.
pub const DEFAULT_KEY_ENV: &str = "BABELNET_KEY";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClientError {
    /// Worth retrying: transport failures, timeouts, 429 and 5xx replies.
    #[error("transient dictionary error: {0}")]
    Transient(String),
    #[error("dictionary request rejected: {0}")]
    Fatal(String),
}

/// Existence check against a lexical resource.
pub trait DictionaryClient: Send + Sync {
    /// Whether `form` has at least one entry.
    fn lookup(&self, form: &str) -> Result<bool, ClientError>;
}

/// Settings for the remote dictionary service.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default)]
pub struct RemoteConfig {
    pub base_url: String,
    pub key_env: String,
    pub search_lang: String,
    /// Requests per second.
    pub rate_limit: f64,
    pub max_retries: u32,
    pub backoff_ms: u64,
    pub timeout_secs: u64,
}

impl Default for RemoteConfig {
    fn default() -> Self {
        RemoteConfig {
            base_url: "https://babelnet.io/v9/getSenses".to_string(),
            key_env: DEFAULT_KEY_ENV.to_string(),
            search_lang: "EN".to_string(),
            rate_limit: 5.0,
            max_retries: 4,
            backoff_ms: 250,
            timeout_secs: 20,
        }
    }
}

/// Token bucket shared by concurrent callers.
#[derive(Debug)]
pub struct RateLimiter {
    interval: Duration,
    next: Mutex<Instant>,
}

impl RateLimiter {
    /// `per_second <= 0` disables limiting.
    pub fn new(per_second: f64) -> Self {
        let interval = if per_second > 0.0 {
            Duration::from_secs_f64(1.0 / per_second)
        } else {
            Duration::ZERO
        };
        RateLimiter {
            interval,
            next: Mutex::new(Instant::now()),
        }
    }

    /// Blocks until the caller may issue one request.
    pub fn acquire(&self) {
        if self.interval.is_zero() {
            return;
        }
        let wait = {
            let mut next = self.next.lock().expect("rate limiter lock");
            let now = Instant::now();
            let slot = (*next).max(now);
            *next = slot + self.interval;
            slot - now
        };
        if !wait.is_zero() {
            thread::sleep(wait);
        }
    }
}

/// Wraps a client with rate limiting and exponential backoff on transient
/// errors.
pub struct Throttled<C> {
    inner: C,
    limiter: RateLimiter,
    max_retries: u32,
    backoff: Duration,
}

impl<C: DictionaryClient> Throttled<C> {
    pub fn new(inner: C, per_second: f64, max_retries: u32, backoff: Duration) -> Self {
        Throttled {
            inner,
            limiter: RateLimiter::new(per_second),
            max_retries,
            backoff,
        }
    }

    pub fn inner(&self) -> &C {
        &self.inner
    }
}

impl<C: DictionaryClient> DictionaryClient for Throttled<C> {
    fn lookup(&self, form: &str) -> Result<bool, ClientError> {
        let mut attempt = 0;
        loop {
            self.limiter.acquire();
            match self.inner.lookup(form) {
                Err(ClientError::Transient(msg)) if attempt < self.max_retries => {
                    let delay = self.backoff.saturating_mul(1 << attempt.min(16));
                    log::debug!("retrying `{form}` in {delay:?} after: {msg}");
                    thread::sleep(delay);
                    attempt += 1;
                }
                other => return other,
            }
        }
    }
}

/// HTTP client: `GET base_url?lemma=..&searchLang=..&key=..`; any non-empty
/// JSON array or object in the reply counts as an entry.
pub struct HttpDictionary {
    agent: ureq::Agent,
    base_url: String,
    search_lang: String,
    key: Option<String>,
}

impl HttpDictionary {
    pub fn new(config: &RemoteConfig) -> Self {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_secs(config.timeout_secs.max(1))))
            .http_status_as_error(false)
            .build()
            .into();
        HttpDictionary {
            agent,
            base_url: config.base_url.clone(),
            search_lang: config.search_lang.clone(),
            key: std::env::var(&config.key_env)
                .ok()
                .filter(|k| !k.is_empty()),
        }
    }

    /// Rate-limited, retrying client built from `config`.
    pub fn throttled(config: &RemoteConfig) -> Throttled<HttpDictionary> {
        Throttled::new(
            HttpDictionary::new(config),
            config.rate_limit,
            config.max_retries,
            Duration::from_millis(config.backoff_ms),
        )
    }

    pub fn has_key(&self) -> bool {
        self.key.is_some()
    }
}

fn has_entry(body: &str) -> Result<bool, ClientError> {
    let value: serde_json::Value = serde_json::from_str(body)
        .map_err(|e| ClientError::Fatal(format!("unreadable reply: {e}")))?;
    Ok(match value {
        serde_json::Value::Array(a) => !a.is_empty(),
        serde_json::Value::Object(o) => !o.is_empty() && !o.contains_key("message"),
        _ => false,
    })
}

impl DictionaryClient for HttpDictionary {
    fn lookup(&self, form: &str) -> Result<bool, ClientError> {
        let mut req = self
            .agent
            .get(&self.base_url)
            .query("lemma", form)
            .query("searchLang", &self.search_lang);
        if let Some(key) = &self.key {
            req = req.query("key", key);
        }
        let mut resp = req
            .call()
            .map_err(|e| ClientError::Transient(e.to_string()))?;
        let status = resp.status().as_u16();
        let body = resp
            .body_mut()
            .read_to_string()
            .map_err(|e| ClientError::Transient(e.to_string()))?;
        match status {
            200..=299 => has_entry(&body),
            404 => Ok(false),
            429 | 500..=599 => Err(ClientError::Transient(format!("HTTP {status}"))),
            _ => Err(ClientError::Fatal(format!(
                "HTTP {status}: {}",
                body.trim()
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entry_detection() {
        assert!(has_entry(r#"[{"id":"bn:1"}]"#).unwrap());
        assert!(!has_entry("[]").unwrap());
        assert!(!has_entry(r#"{"message":"Wrong key"}"#).unwrap());
        assert!(has_entry("not json").is_err());
    }

    #[test]
    fn rate_limiter_spaces_requests() {
        let lim = RateLimiter::new(100.0);
        let start = Instant::now();
        for _ in 0..6 {
            lim.acquire();
        }
        assert!(start.elapsed() >= Duration::from_millis(45));
    }
}
