//! Looks up b-files from a fixture directory, the download cache, the
//! bundled copies or (opt-in) the network, and compares them to emitted
//! terms.

use std::fmt;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;

use crate::bfile::{normalize_id, BFile};
use crate::error::{CliError, CliResult};
use crate::sequence::{emit_sequence, oeis_binding, oeis_term_cap};

pub const CACHE_ENV: &str = "PASCALMOD_OEIS_CACHE";

const BUNDLED: [(&str, &str); 8] = [
    ("A001317", include_str!("../fixtures/b001317.txt")),
    ("A001969", include_str!("../fixtures/b001969.txt")),
    ("A003188", include_str!("../fixtures/b003188.txt")),
    ("A019434", include_str!("../fixtures/b019434.txt")),
    ("A048724", include_str!("../fixtures/b048724.txt")),
    ("A071770", include_str!("../fixtures/b071770.txt")),
    ("A173019", include_str!("../fixtures/b173019.txt")),
    ("A242399", include_str!("../fixtures/b242399.txt")),
];

pub fn bundled(id: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(k, _)| *k == id).map(|(_, v)| *v)
}

/// `$PASCALMOD_OEIS_CACHE`, else `$XDG_CACHE_HOME/pascalmod/oeis`, else
/// `~/.cache/pascalmod/oeis`.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()) {
        return PathBuf::from(dir);
    }
    let base = std::env::var_os("XDG_CACHE_HOME")
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
        .unwrap_or_else(|| PathBuf::from(".cache"));
    base.join("pascalmod").join("oeis")
}

fn file_name(id: &str) -> String {
    format!("b{}.txt", &id[1..])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    FixtureDir(PathBuf),
    Cache(PathBuf),
    Bundled,
    Network(String),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::FixtureDir(p) => write!(f, "fixture {}", p.display()),
            Source::Cache(p) => write!(f, "cache {}", p.display()),
            Source::Bundled => f.write_str("bundled fixture"),
            Source::Network(u) => write!(f, "{u}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct OeisClient {
    pub fixture_dir: Option<PathBuf>,
    pub cache_dir: PathBuf,
    pub use_bundled: bool,
    pub network: bool,
}

impl Default for OeisClient {
    fn default() -> Self {
        OeisClient {
            fixture_dir: None,
            cache_dir: default_cache_dir(),
            use_bundled: true,
            network: false,
        }
    }
}

fn read_if_exists(path: &Path) -> CliResult<Option<String>> {
    match std::fs::read_to_string(path) {
        Ok(s) => Ok(Some(s)),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(CliError::io(path, e)),
    }
}

impl OeisClient {
    /// Raw b-file text and where it came from.
    pub fn fetch_text(&self, id: &str) -> CliResult<(String, Source)> {
        let id = normalize_id(id)?;
        let name = file_name(&id);
        if let Some(dir) = &self.fixture_dir {
            let path = dir.join(&name);
            if let Some(text) = read_if_exists(&path)? {
                return Ok((text, Source::FixtureDir(path)));
            }
        }
        let cached = self.cache_dir.join(&name);
        if let Some(text) = read_if_exists(&cached)? {
            return Ok((text, Source::Cache(cached)));
        }
        if self.use_bundled {
            if let Some(text) = bundled(&id) {
                return Ok((text.to_string(), Source::Bundled));
            }
        }
        if !self.network {
            return Err(CliError::Offline(id));
        }
        let url = format!("https://oeis.org/{id}/{name}");
        let text = ureq::get(&url)
            .call()
            .map_err(|e| CliError::Network(format!("{url}: {e}")))?
            .body_mut()
            .read_to_string()
            .map_err(|e| CliError::Network(format!("{url}: {e}")))?;
        // parse before caching so a bad download is not kept
        BFile::parse(&id, &text)?;
        std::fs::create_dir_all(&self.cache_dir).map_err(|e| CliError::io(&self.cache_dir, e))?;
        std::fs::write(&cached, &text).map_err(|e| CliError::io(&cached, e))?;
        Ok((text, Source::Network(url)))
    }

    pub fn load(&self, id: &str) -> CliResult<(BFile, Source)> {
        let (text, source) = self.fetch_text(id)?;
        let id = normalize_id(id)?;
        Ok((BFile::parse(&id, &text)?, source))
    }

    /// Compares up to `max_terms` fixture entries with the bound sequence.
    pub fn verify(&self, id: &str, max_terms: Option<usize>) -> CliResult<VerifyReport> {
        let id = normalize_id(id)?;
        let desc = oeis_binding(&id)
            .ok_or_else(|| CliError::Usage(format!("no sequence is bound to {id}")))?;
        let (bfile, source) = self.load(&id)?;
        let mut take = bfile.len();
        if let Some(cap) = oeis_term_cap(&id) {
            take = take.min(cap);
        }
        if let Some(m) = max_terms {
            take = take.min(m);
        }
        let expected = &bfile.entries[..take];
        let last = expected.last().map_or(desc.offset, |(i, _)| *i);
        let needed = (last - desc.offset + 1).max(1) as usize;
        let computed = emit_sequence(&desc, needed)?;
        let mut mismatch = None;
        for (index, value) in expected {
            let got = usize::try_from(index - desc.offset)
                .ok()
                .and_then(|j| computed.get(j));
            if got != Some(value) {
                mismatch = Some(Mismatch {
                    index: *index,
                    expected: value.clone(),
                    computed: got.cloned(),
                });
                break;
            }
        }
        Ok(VerifyReport {
            id,
            source,
            offset: bfile.offset(),
            compared: take,
            mismatch,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub index: i64,
    pub expected: BigInt,
    /// `None` when the index precedes the sequence offset.
    pub computed: Option<BigInt>,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub id: String,
    pub source: Source,
    pub offset: i64,
    pub compared: usize,
    pub mismatch: Option<Mismatch>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none() && self.compared > 0
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mismatch {
            None => write!(
                f,
                "{} ok: {} terms from index {} match ({})",
                self.id, self.compared, self.offset, self.source
            ),
            Some(m) => {
                let got = m
                    .computed
                    .as_ref()
                    .map_or("nothing".to_string(), |v| v.to_string());
                write!(
                    f,
                    "{} MISMATCH at index {}: expected {}, computed {} ({})",
                    self.id, m.index, m.expected, got, self.source
                )
            }
        }
    }
}
