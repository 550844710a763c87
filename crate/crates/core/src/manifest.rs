//! Partition manifests: a text file naming the host, the target property
//! and one edge-list file per part.
//!
//! ```text
//! format: 1
//! host: complete n=64
//! target: girth>=8
//! declared_parts: 150
//! part 0 file=parts/part_0000.edges edges=21 verified=true girth=8
//! ```
//!
//! Hosts are `complete n=N`, `complete-bipartite a=A b=B` or
//! `explicit file=PATH`. Paths are relative to the manifest. The
//! `verified` and `girth` fields record what the writer checked; readers
//! must not rely on them.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::io::{format_edges, read_edge_list, read_raw_edge_list, write_edge_list};
use crate::partition::{EdgePartition, Host, Part, Target};
use crate::verify::VerificationReport;

pub const MANIFEST_FILE: &str = "manifest.txt";
pub const HOST_FILE: &str = "host.edges";
pub const PARTS_DIR: &str = "parts";

/// What a manifest claims about one part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartClaim {
    pub id: usize,
    pub file: PathBuf,
    pub edges: usize,
    pub verified: Option<bool>,
    pub girth: Option<String>,
}

#[derive(Clone, Debug)]
pub struct LoadedManifest {
    pub path: PathBuf,
    pub partition: EdgePartition,
    pub claims: Vec<PartClaim>,
}

pub fn part_file_name(id: usize) -> String {
    format!("part_{id:04}.edges")
}

/// Writes `dir/manifest.txt`, `dir/parts/*.edges` and, for explicit
/// hosts, `dir/host.edges`. Returns the manifest path.
pub fn write_partition(
    dir: &Path,
    p: &EdgePartition,
    report: Option<&VerificationReport>,
) -> Result<PathBuf> {
    let parts_dir = dir.join(PARTS_DIR);
    fs::create_dir_all(&parts_dir).map_err(|e| Error::io(&parts_dir, e))?;
    let host_line = match &p.host {
        Host::Complete { n } => format!("complete n={n}"),
        Host::CompleteBipartite { a, b } => format!("complete-bipartite a={a} b={b}"),
        Host::Explicit(g) => {
            write_edge_list(g, dir.join(HOST_FILE))?;
            format!("explicit file={HOST_FILE}")
        }
    };
    let mut text = String::new();
    text.push_str("# partition manifest\nformat: 1\n");
    text.push_str(&format!("host: {host_line}\n"));
    text.push_str(&format!("target: {}\n", p.target));
    text.push_str(&format!("declared_parts: {}\n", p.declared_parts));
    let n = p.host.vertex_count();
    for (i, part) in p.parts.iter().enumerate() {
        let name = part_file_name(part.id);
        let path = parts_dir.join(&name);
        fs::write(&path, format_edges(n, &part.edges)).map_err(|e| Error::io(&path, e))?;
        let mut line = format!(
            "part {} file={PARTS_DIR}/{name} edges={}",
            part.id,
            part.edges.len()
        );
        if let Some(check) = report
            .and_then(|r| r.parts.get(i))
            .filter(|c| c.id == part.id)
        {
            line.push_str(&format!(" verified={} girth={}", check.pass, check.girth));
        }
        text.push_str(&line);
        text.push('\n');
    }
    let path = dir.join(MANIFEST_FILE);
    fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

/// Reads a manifest and every file it references. Part edge lists are
/// read without duplicate checks so that verification, not loading,
/// reports them.
pub fn load_partition(path: &Path) -> Result<LoadedManifest> {
    let source = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mut host = None;
    let mut target = None;
    let mut declared = None;
    let mut claims = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: String| Error::parse(&source, lineno, msg);
        if let Some(rest) = line.strip_prefix("part ") {
            claims.push(parse_part_line(rest).map_err(bad)?);
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| bad(format!("expected `key: value`, got `{line}`")))?;
        let value = value.trim();
        match key.trim() {
            "format" if value == "1" => {}
            "format" => return Err(bad(format!("unsupported format `{value}`"))),
            "host" => {
                host = Some(parse_host(value, base).map_err(|e| match e {
                    Error::InvalidArgument(m) => bad(m),
                    other => other,
                })?)
            }
            "target" => {
                target =
                    Some(parse_target(value).ok_or_else(|| bad(format!("bad target `{value}`")))?)
            }
            "declared_parts" => {
                declared = Some(
                    value
                        .parse::<usize>()
                        .map_err(|_| bad(format!("bad count `{value}`")))?,
                )
            }
            other => return Err(bad(format!("unknown key `{other}`"))),
        }
    }
    let host = host.ok_or_else(|| Error::parse(&source, 0, "missing host"))?;
    let target = target.ok_or_else(|| Error::parse(&source, 0, "missing target"))?;
    let n = host.vertex_count();
    let mut parts = Vec::with_capacity(claims.len());
    for c in &claims {
        let raw = read_raw_edge_list(base.join(&c.file))?;
        if raw.n != n {
            return Err(Error::parse(
                &c.file.display().to_string(),
                0,
                format!("part has {} vertices, host has {n}", raw.n),
            ));
        }
        parts.push(Part {
            id: c.id,
            edges: raw.edges,
        });
    }
    let declared_parts = declared.unwrap_or(parts.len());
    Ok(LoadedManifest {
        path: path.to_path_buf(),
        partition: EdgePartition {
            host,
            target,
            parts,
            declared_parts,
        },
        claims,
    })
}

fn field<'a>(fields: &[(&'a str, &'a str)], key: &str) -> Option<&'a str> {
    fields.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
}

fn key_values(s: &str) -> std::result::Result<Vec<(&str, &str)>, String> {
    s.split_whitespace()
        .map(|kv| {
            kv.split_once('=')
                .ok_or_else(|| format!("expected key=value, got `{kv}`"))
        })
        .collect()
}

fn parse_host(value: &str, base: &Path) -> Result<Host> {
    let (kind, rest) = value.split_once(' ').unwrap_or((value, ""));
    let fields = key_values(rest).map_err(Error::InvalidArgument)?;
    let num = |key: &str| -> Result<usize> {
        field(&fields, key)
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::InvalidArgument(format!("host `{kind}` needs numeric {key}=")))
    };
    match kind {
        "complete" => Ok(Host::Complete { n: num("n")? }),
        "complete-bipartite" => Ok(Host::CompleteBipartite {
            a: num("a")?,
            b: num("b")?,
        }),
        "explicit" => {
            let file = field(&fields, "file")
                .ok_or_else(|| Error::InvalidArgument("explicit host needs file=".into()))?;
            Ok(Host::Explicit(read_edge_list(base.join(file))?))
        }
        _ => Err(Error::InvalidArgument(format!("unknown host `{kind}`"))),
    }
}

pub fn parse_target(s: &str) -> Option<Target> {
    if let Some(g) = s.strip_prefix("girth>=") {
        g.parse().ok().map(Target::Girth)
    } else if let Some(l) = s.strip_prefix("no-C") {
        l.parse().ok().map(Target::CycleFree)
    } else {
        None
    }
}

fn parse_part_line(rest: &str) -> std::result::Result<PartClaim, String> {
    let (id, rest) = rest
        .trim()
        .split_once(' ')
        .ok_or("part line needs an id and file=")?;
    let id = id.parse().map_err(|_| format!("bad part id `{id}`"))?;
    let fields = key_values(rest)?;
    let file = field(&fields, "file").ok_or("part line needs file=")?;
    let edges = match field(&fields, "edges") {
        Some(e) => e.parse().map_err(|_| format!("bad edge count `{e}`"))?,
        None => 0,
    };
    let verified = match field(&fields, "verified") {
        Some("true") => Some(true),
        Some("false") => Some(false),
        Some(v) => return Err(format!("bad verified flag `{v}`")),
        None => None,
    };
    Ok(PartClaim {
        id,
        file: PathBuf::from(file),
        edges,
        verified,
        girth: field(&fields, "girth").map(String::from),
    })
}
