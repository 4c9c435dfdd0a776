//! Sources of relative class-group p-ranks: CSV table ingestion in the
//! bundled format, an external computer-algebra backend spoken to over a
//! line protocol, and an append-only JSON-lines cache.

use crate::error::DataError;
use crate::intfactor::is_prime;
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::{Child, Command, Stdio};

/// The four table families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Quartic twists y^2 = x^3 - Dx, parameter D.
    ED,
    /// Sextic twists y^2 = x^3 + A, parameter A.
    EA,
    /// Congruent-number curves y^2 = x^3 - n^2 x, parameter n.
    CN,
    /// Cube-sum curves y^2 = x^3 - 432 n^2, parameter n.
    CS,
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::ED => "ED",
            Family::EA => "EA",
            Family::CN => "CN",
            Family::CS => "CS",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "ED" => Some(Family::ED),
            "EA" => Some(Family::EA),
            "CN" => Some(Family::CN),
            "CS" => Some(Family::CS),
            _ => None,
        }
    }

    /// Bad reduction when p divides this quantity.
    pub fn reduction_modulus(&self, parameter: &BigInt) -> BigInt {
        match self {
            Family::ED | Family::CN => BigInt::from(2) * parameter,
            Family::EA | Family::CS => BigInt::from(6) * parameter,
        }
    }

    /// Split primes carry a 1-dimensional p-torsion eigenspace.
    pub fn split_modulus(&self) -> u64 {
        match self {
            Family::ED | Family::CN => 4,
            Family::EA | Family::CS => 6,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Where a datum came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DataSource {
    Table,
    Backend,
    Cache,
}

/// One relative class-group p-rank record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassGroupDatum {
    pub family: Family,
    #[serde(with = "bigint_string")]
    pub parameter: BigInt,
    pub p: u64,
    pub h: u32,
    pub grh: bool,
    pub source: DataSource,
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn validate_datum(d: &ClassGroupDatum, line: usize) -> Result<(), DataError> {
    if !is_prime(&BigInt::from(d.p)) {
        return Err(DataError::InvariantViolation {
            line,
            msg: format!("{} is not prime", d.p),
        });
    }
    if d.parameter.is_zero() {
        return Err(DataError::InvariantViolation {
            line,
            msg: "parameter must be nonzero".to_string(),
        });
    }
    let modulus = d.family.reduction_modulus(&d.parameter);
    if (modulus % BigInt::from(d.p)).is_zero() {
        return Err(DataError::InvariantViolation {
            line,
            msg: format!(
                "bad reduction: p = {} divides the reduction modulus of {} {}",
                d.p,
                d.family.tag(),
                d.parameter
            ),
        });
    }
    // inert primes act through the quadratic residue field, forcing even h
    let inert = d.p % d.family.split_modulus() != 1;
    if inert && d.h % 2 == 1 {
        return Err(DataError::InvariantViolation {
            line,
            msg: format!(
                "h = {} must be even at the inert prime p = {} ({} {})",
                d.h,
                d.p,
                d.family.tag(),
                d.parameter
            ),
        });
    }
    Ok(())
}

/// Parse the CSV table format `family,parameter,p,h,grh` (header required).
pub fn parse_table(text: &str) -> Result<Vec<ClassGroupDatum>, DataError> {
    let mut out = Vec::new();
    let mut seen: HashMap<(Family, BigInt, u64), usize> = HashMap::new();
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "family,parameter,p,h,grh" => {}
        Some((_, other)) => {
            return Err(DataError::Parse {
                line: 1,
                msg: format!("bad header: {:?}", other),
            })
        }
        None => {
            return Err(DataError::Parse { line: 1, msg: "empty file".to_string() });
        }
    }
    for (idx, raw) in lines {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').collect();
        if fields.len() != 5 {
            return Err(DataError::Parse {
                line,
                msg: format!("expected 5 fields, found {}", fields.len()),
            });
        }
        let family = Family::parse(fields[0]).ok_or_else(|| DataError::Parse {
            line,
            msg: format!("unknown family {:?}", fields[0]),
        })?;
        let parameter: BigInt = fields[1].parse().map_err(|e| DataError::Parse {
            line,
            msg: format!("parameter: {}", e),
        })?;
        let p: u64 = fields[2].parse().map_err(|e| DataError::Parse {
            line,
            msg: format!("p: {}", e),
        })?;
        let h: u32 = fields[3].parse().map_err(|e| DataError::Parse {
            line,
            msg: format!("h: {}", e),
        })?;
        let grh = match fields[4] {
            "true" => true,
            "false" => false,
            other => {
                return Err(DataError::Parse {
                    line,
                    msg: format!("grh must be true/false, found {:?}", other),
                })
            }
        };
        let datum = ClassGroupDatum {
            family,
            parameter,
            p,
            h,
            grh,
            source: DataSource::Table,
        };
        validate_datum(&datum, line)?;
        let key = (datum.family, datum.parameter.clone(), datum.p);
        if let Some(first) = seen.get(&key) {
            return Err(DataError::Duplicate {
                line,
                msg: format!(
                    "({}, {}, {}) already present at line {}",
                    key.0, key.1, key.2, first
                ),
            });
        }
        seen.insert(key, line);
        out.push(datum);
    }
    Ok(out)
}

/// Load the CSV table format from a file.
pub fn load_table(path: &Path) -> Result<Vec<ClassGroupDatum>, DataError> {
    let text = std::fs::read_to_string(path)?;
    parse_table(&text)
}

/// Serialize data back into the CSV format (round-trips with parse_table).
pub fn write_table(data: &[ClassGroupDatum]) -> String {
    let mut out = String::from("family,parameter,p,h,grh\n");
    for d in data {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            d.family.tag(),
            d.parameter,
            d.p,
            d.h,
            d.grh
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// backend protocol
// ---------------------------------------------------------------------------

/// One request of the line protocol: `CLGP <p> <degree> <c0> ... <cdeg>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BackendRequest {
    pub p: u64,
    pub poly: IntPoly,
}

impl BackendRequest {
    pub fn to_line(&self) -> String {
        let coeffs = self
            .poly
            .coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        format!("CLGP {} {} {}", self.p, self.poly.deg_or_zero(), coeffs)
    }
}

/// `OK <rank> <grh:0|1>` or `ERR <message>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BackendResponse {
    Ok { rank: u32, grh: bool },
    Err(String),
}

impl BackendResponse {
    pub fn parse(line: &str) -> Result<BackendResponse, DataError> {
        let line = line.trim_end();
        if let Some(rest) = line.strip_prefix("OK ") {
            let mut it = rest.split_whitespace();
            let rank: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| DataError::BackendError(format!("bad OK line: {:?}", line)))?;
            let grh = match it.next() {
                Some("0") => false,
                Some("1") => true,
                _ => {
                    return Err(DataError::BackendError(format!(
                        "bad grh flag in: {:?}",
                        line
                    )))
                }
            };
            Ok(BackendResponse::Ok { rank, grh })
        } else if let Some(msg) = line.strip_prefix("ERR") {
            Ok(BackendResponse::Err(msg.trim().to_string()))
        } else {
            Err(DataError::BackendError(format!(
                "unrecognized response: {:?}",
                line
            )))
        }
    }
}

/// Anything that can answer class-group rank queries.
pub trait ClassGroupBackend {
    fn query(&mut self, req: &BackendRequest) -> Result<BackendResponse, DataError>;
}

/// A backend living in a child process, one request per line on stdin,
/// one response per line on stdout.
pub struct SubprocessBackend {
    child: Child,
    reader: BufReader<std::process::ChildStdout>,
}

impl SubprocessBackend {
    /// Spawn from a command line (split on whitespace).
    pub fn spawn(cmdline: &str) -> Result<SubprocessBackend, DataError> {
        let mut parts = cmdline.split_whitespace();
        let program = parts
            .next()
            .ok_or_else(|| DataError::BackendUnavailable("empty command".to_string()))?;
        let mut child = Command::new(program)
            .args(parts)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .map_err(|e| DataError::BackendUnavailable(format!("{}: {}", cmdline, e)))?;
        let stdout = child
            .stdout
            .take()
            .ok_or_else(|| DataError::BackendUnavailable("no stdout".to_string()))?;
        Ok(SubprocessBackend { child, reader: BufReader::new(stdout) })
    }
}

impl ClassGroupBackend for SubprocessBackend {
    fn query(&mut self, req: &BackendRequest) -> Result<BackendResponse, DataError> {
        let stdin = self
            .child
            .stdin
            .as_mut()
            .ok_or_else(|| DataError::BackendUnavailable("no stdin".to_string()))?;
        writeln!(stdin, "{}", req.to_line())?;
        stdin.flush()?;
        let mut line = String::new();
        let n = self.reader.read_line(&mut line)?;
        if n == 0 {
            return Err(DataError::BackendUnavailable(
                "backend closed its output".to_string(),
            ));
        }
        BackendResponse::parse(&line)
    }
}

impl Drop for SubprocessBackend {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

// ---------------------------------------------------------------------------
// cache
// ---------------------------------------------------------------------------

/// Cache key: SHA-256 over the normalized coefficients and p.
pub fn cache_key(poly: &IntPoly, p: u64) -> String {
    let norm = poly.primitive_positive();
    let mut hasher = Sha256::new();
    hasher.update(p.to_string().as_bytes());
    for c in norm.coeffs() {
        hasher.update(b"|");
        hasher.update(c.to_string().as_bytes());
    }
    format!("{:x}", hasher.finalize())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub key: String,
    pub rank: u32,
    pub grh: bool,
}

/// Append-only JSON-lines cache of field-rank responses. A corrupt
/// trailing record is tolerated (dropped with a warning flag).
pub struct RankCache {
    path: PathBuf,
    map: HashMap<String, CacheRecord>,
    pub truncated_tail: bool,
}

impl RankCache {
    pub fn open(path: &Path) -> Result<RankCache, DataError> {
        let mut map = HashMap::new();
        let mut truncated_tail = false;
        if path.exists() {
            let text = std::fs::read_to_string(path)?;
            let lines: Vec<&str> = text.lines().collect();
            for (i, line) in lines.iter().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<CacheRecord>(line) {
                    Ok(rec) => {
                        map.insert(rec.key.clone(), rec);
                    }
                    Err(_) if i + 1 == lines.len() => {
                        // torn final write; keep the earlier records
                        truncated_tail = true;
                    }
                    Err(e) => {
                        return Err(DataError::Parse {
                            line: i + 1,
                            msg: format!("cache record: {}", e),
                        })
                    }
                }
            }
        }
        Ok(RankCache { path: path.to_path_buf(), map, truncated_tail })
    }

    pub fn get(&self, key: &str) -> Option<&CacheRecord> {
        self.map.get(key)
    }

    pub fn put(&mut self, rec: CacheRecord) -> Result<(), DataError> {
        let mut f = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        writeln!(f, "{}", serde_json::to_string(&rec).expect("serializable record"))?;
        self.map.insert(rec.key.clone(), rec);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Rank of Cl(field)[p] via the backend, cached by (poly, p).
fn field_rank(
    poly: &IntPoly,
    p: u64,
    backend: &mut dyn ClassGroupBackend,
    cache: Option<&mut RankCache>,
) -> Result<(u32, bool), DataError> {
    let key = cache_key(poly, p);
    if let Some(c) = &cache {
        if let Some(hit) = c.get(&key) {
            return Ok((hit.rank, hit.grh));
        }
    }
    let resp = backend.query(&BackendRequest { p, poly: poly.clone() })?;
    match resp {
        BackendResponse::Ok { rank, grh } => {
            if let Some(c) = cache {
                c.put(CacheRecord { key, rank, grh })?;
            }
            Ok((rank, grh))
        }
        BackendResponse::Err(msg) => Err(DataError::BackendError(msg)),
    }
}

/// Relative p-rank rank(Cl(L)[p]) - rank(Cl(F)[p]) through the backend,
/// with the GRH flag as the OR of the two responses.
pub fn relative_rank_from_backend(
    family: Family,
    parameter: &BigInt,
    tower_l: &IntPoly,
    tower_f: &IntPoly,
    p: u64,
    backend: &mut dyn ClassGroupBackend,
    mut cache: Option<&mut RankCache>,
) -> Result<ClassGroupDatum, DataError> {
    let (rank_l, grh_l) = field_rank(tower_l, p, backend, cache.as_deref_mut())?;
    let (rank_f, grh_f) = field_rank(tower_f, p, backend, cache.as_deref_mut())?;
    if rank_l < rank_f {
        return Err(DataError::NegativeRelativeRank { l: rank_l, f: rank_f });
    }
    Ok(ClassGroupDatum {
        family,
        parameter: parameter.clone(),
        p,
        h: rank_l - rank_f,
        grh: grh_l || grh_f,
        source: DataSource::Backend,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn parse_spec_rows() {
        let text = "family,parameter,p,h,grh\nED,17,3,2,false\nEA,-11,7,1,true\n";
        let rows = parse_table(text).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].h, 2);
        assert!(rows[1].grh);
    }

    #[test]
    fn bad_reduction_rejected() {
        let text = "family,parameter,p,h,grh\nED,5,5,0,false\n";
        assert!(matches!(
            parse_table(text),
            Err(DataError::InvariantViolation { .. })
        ));
    }

    #[test]
    fn odd_h_at_inert_prime_rejected() {
        let text = "family,parameter,p,h,grh\nED,17,3,1,false\n";
        assert!(matches!(
            parse_table(text),
            Err(DataError::InvariantViolation { .. })
        ));
    }

    #[test]
    fn duplicates_rejected() {
        let text = "family,parameter,p,h,grh\nED,17,3,2,false\nED,17,3,2,false\n";
        assert!(matches!(parse_table(text), Err(DataError::Duplicate { .. })));
    }

    #[test]
    fn roundtrip() {
        let rows = parse_table(crate::fixtures::ED_H_CSV).unwrap();
        let text = write_table(&rows);
        let rows2 = parse_table(&text).unwrap();
        assert_eq!(rows, rows2);
    }

    #[test]
    fn fixtures_all_parse() {
        for text in [
            crate::fixtures::ED_H_CSV,
            crate::fixtures::EA_H_CSV,
            crate::fixtures::CN_H_CSV,
            crate::fixtures::CS_H_CSV,
        ] {
            assert!(!parse_table(text).unwrap().is_empty());
        }
    }

    #[test]
    fn response_parsing() {
        assert_eq!(
            BackendResponse::parse("OK 2 1").unwrap(),
            BackendResponse::Ok { rank: 2, grh: true }
        );
        assert_eq!(
            BackendResponse::parse("ERR no such field").unwrap(),
            BackendResponse::Err("no such field".to_string())
        );
        assert!(BackendResponse::parse("HELLO").is_err());
    }

    #[test]
    fn request_line_format() {
        let req = BackendRequest { p: 3, poly: IntPoly::from_i64(&[-1, 0, 0, 0, 3]) };
        assert_eq!(req.to_line(), "CLGP 3 4 -1 0 0 0 3");
    }

    struct MockBackend {
        responses: Vec<BackendResponse>,
        calls: usize,
    }

    impl ClassGroupBackend for MockBackend {
        fn query(&mut self, _req: &BackendRequest) -> Result<BackendResponse, DataError> {
            let r = self.responses[self.calls.min(self.responses.len() - 1)].clone();
            self.calls += 1;
            Ok(r)
        }
    }

    #[test]
    fn relative_rank_subtraction() {
        let mut be = MockBackend {
            responses: vec![
                BackendResponse::Ok { rank: 2, grh: false },
                BackendResponse::Ok { rank: 0, grh: false },
            ],
            calls: 0,
        };
        let d = relative_rank_from_backend(
            Family::ED,
            &bi(1),
            &IntPoly::from_i64(&[-1, 0, 0, 0, 3]),
            &IntPoly::from_i64(&[-1, -6, 3]),
            3,
            &mut be,
            None,
        )
        .unwrap();
        assert_eq!(d.h, 2);
        assert!(!d.grh);
    }

    #[test]
    fn negative_relative_rank_surfaces() {
        let mut be = MockBackend {
            responses: vec![
                BackendResponse::Ok { rank: 0, grh: false },
                BackendResponse::Ok { rank: 1, grh: true },
            ],
            calls: 0,
        };
        let r = relative_rank_from_backend(
            Family::ED,
            &bi(1),
            &IntPoly::from_i64(&[-1, 0, 0, 0, 3]),
            &IntPoly::from_i64(&[-1, -6, 3]),
            3,
            &mut be,
            None,
        );
        assert!(matches!(r, Err(DataError::NegativeRelativeRank { l: 0, f: 1 })));
    }

    #[test]
    fn cache_roundtrip_and_torn_tail() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let mut cache = RankCache::open(&path).unwrap();
        assert!(cache.is_empty());
        let key = cache_key(&IntPoly::from_i64(&[-1, -6, 3]), 3);
        cache
            .put(CacheRecord { key: key.clone(), rank: 2, grh: false })
            .unwrap();
        drop(cache);
        // reread-your-writes
        let cache2 = RankCache::open(&path).unwrap();
        assert_eq!(cache2.get(&key).unwrap().rank, 2);
        assert!(cache2.get("missing").is_none());
        // corrupt trailing record is tolerated
        {
            let mut f = std::fs::OpenOptions::new().append(true).open(&path).unwrap();
            write!(f, "{{\"key\": \"oops").unwrap();
        }
        let cache3 = RankCache::open(&path).unwrap();
        assert!(cache3.truncated_tail);
        assert_eq!(cache3.len(), 1);
        assert_eq!(cache3.get(&key).unwrap().rank, 2);
    }

    #[test]
    fn grh_monotonicity_through_backend() {
        let mut be = MockBackend {
            responses: vec![
                BackendResponse::Ok { rank: 3, grh: true },
                BackendResponse::Ok { rank: 1, grh: false },
            ],
            calls: 0,
        };
        let d = relative_rank_from_backend(
            Family::EA,
            &bi(2),
            &IntPoly::from_i64(&[1, 0, 7]),
            &IntPoly::from_i64(&[1, 7]),
            7,
            &mut be,
            None,
        )
        .unwrap();
        assert!(d.grh, "GRH flag must propagate from either response");
        assert_eq!(d.h, 2);
    }
}
