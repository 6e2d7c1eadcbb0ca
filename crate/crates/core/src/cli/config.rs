//! INI-style run configuration. Keys outside any section apply to every
//! subcommand; a section named after the subcommand (`[verify]`, `[green]`,
//! ...) overrides them; command-line flags override both. `[tolerances]`
//! maps check ids to tolerances.

use std::path::Path;
use std::str::FromStr;

use ini::Ini;

use crate::error::{Error, Result};

#[derive(Debug, Default)]
pub struct FileConfig {
    ini: Option<Ini>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let ini = Ini::load_from_file(path)
            .map_err(|e| Error::Parse(format!("cannot read config {}: {e}", path.display())))?;
        Ok(FileConfig { ini: Some(ini) })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let ini = Ini::load_from_str(text).map_err(|e| Error::Parse(format!("bad config: {e}")))?;
        Ok(FileConfig { ini: Some(ini) })
    }

    pub fn raw(&self, section: &str, key: &str) -> Option<&str> {
        let ini = self.ini.as_ref()?;
        ini.section(Some(section))
            .and_then(|s| s.get(key))
            .or_else(|| ini.general_section().get(key))
    }

    /// Flag value if given, else the file value parsed as `T`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, section: &str, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.raw(section, key) {
            None => Ok(None),
            Some(text) => text
                .trim()
                .parse()
                .map(Some)
                .map_err(|e| Error::Parse(format!("config key `{key}` in [{section}]: {e}"))),
        }
    }

    /// Whitespace-separated list; flags replace the file list entirely.
    pub fn pick_list<T: FromStr>(&self, flags: Vec<T>, section: &str, key: &str) -> Result<Vec<T>>
    where
        T::Err: std::fmt::Display,
    {
        if !flags.is_empty() {
            return Ok(flags);
        }
        let Some(text) = self.raw(section, key) else { return Ok(Vec::new()) };
        text.split_whitespace()
            .map(|w| w.parse().map_err(|e| Error::Parse(format!("config key `{key}` in [{section}]: {e}"))))
            .collect()
    }

    pub fn tolerances(&self) -> Result<Vec<(String, f64)>> {
        let Some(sec) = self.ini.as_ref().and_then(|i| i.section(Some("tolerances"))) else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        for (k, v) in sec.iter() {
            let tol: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("tolerance for `{k}` is not a number: `{v}`")))?;
            out.push((k.to_string(), tol));
        }
        Ok(out)
    }

    /// `command = ...` from the general section, split into words.
    pub fn command_words(&self) -> Option<Vec<String>> {
        let ini = self.ini.as_ref()?;
        let text = ini.general_section().get("command")?;
        Some(text.split_whitespace().map(str::to_string).collect())
    }
}
