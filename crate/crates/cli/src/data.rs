//! CSV ingestion and emission.
//!
//! Rankings: no header, one ranking per row, column `p` holds the candidate
//! id at rank `p + 1`. Groups: header `candidate,group`, one row per
//! candidate. Candidate ids and group labels are arbitrary strings, remapped
//! to dense indices in groups-file order.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use fairagg_core::{GroupAssignment, Ranking};

use crate::error::{CliError, CliResult};

/// Rankings and groups over densely remapped candidates.
#[derive(Debug, Clone)]
pub struct Dataset {
    /// Original id of each dense candidate index.
    pub candidate_ids: Vec<String>,
    /// Original label of each dense group index.
    pub group_labels: Vec<String>,
    pub group_of: Vec<usize>,
    pub rankings: Vec<Ranking>,
}

impl Dataset {
    pub fn d(&self) -> usize {
        self.candidate_ids.len()
    }

    pub fn n(&self) -> usize {
        self.rankings.len()
    }

    pub fn groups(&self) -> CliResult<GroupAssignment> {
        Ok(GroupAssignment::new(self.group_of.clone(), self.group_labels.len())?)
    }

    /// Original ids in rank order.
    pub fn labels(&self, sigma: &Ranking) -> Vec<String> {
        sigma.order().into_iter().map(|c| self.candidate_ids[c].clone()).collect()
    }
}

fn reader(path: &Path, headers: bool) -> CliResult<csv::Reader<File>> {
    csv::ReaderBuilder::new()
        .has_headers(headers)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::io(path, e))
}

/// Reads `candidate,group` rows.
pub fn read_groups(path: &Path) -> CliResult<(Vec<String>, Vec<String>, Vec<usize>)> {
    let mut rdr = reader(path, true)?;
    let header = rdr.headers().map_err(|e| CliError::io(path, e))?.clone();
    if header.len() != 2 || &header[0] != "candidate" || &header[1] != "group" {
        return Err(CliError::Input(format!(
            "{}: expected header \"candidate,group\", found {:?}",
            path.display(),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut ids = Vec::new();
    let mut seen = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut label_index = HashMap::new();
    let mut group_of = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| CliError::io(path, e))?;
        if rec.len() != 2 {
            return Err(CliError::Input(format!(
                "{}: line {line}: expected 2 fields, found {}",
                path.display(),
                rec.len()
            )));
        }
        let (id, label) = (rec[0].to_string(), rec[1].to_string());
        if seen.insert(id.clone(), line).is_some() {
            return Err(CliError::Input(format!(
                "{}: line {line}: candidate {id:?} listed twice",
                path.display()
            )));
        }
        let g = *label_index.entry(label.clone()).or_insert_with(|| {
            labels.push(label);
            labels.len() - 1
        });
        ids.push(id);
        group_of.push(g);
    }
    if ids.is_empty() {
        return Err(CliError::Input(format!("{}: no candidates", path.display())));
    }
    Ok((ids, labels, group_of))
}

/// Reads ranking rows against a known candidate list.
pub fn read_rankings(path: &Path, candidate_ids: &[String]) -> CliResult<Vec<Ranking>> {
    let index: HashMap<&str, usize> = candidate_ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let d = candidate_ids.len();
    let mut rankings = Vec::new();
    for (i, rec) in reader(path, false)?.records().enumerate() {
        let row = i + 1;
        let rec = rec.map_err(|e| CliError::io(path, e))?;
        let bad = |m: String| CliError::Input(format!("{}: row {row}: {m}", path.display()));
        if rec.len() != d {
            return Err(bad(format!("expected {d} candidates, found {}", rec.len())));
        }
        let mut order = Vec::with_capacity(d);
        let mut placed = vec![false; d];
        for field in rec.iter() {
            let c = *index
                .get(field)
                .ok_or_else(|| bad(format!("unknown candidate {field:?}")))?;
            if std::mem::replace(&mut placed[c], true) {
                return Err(bad(format!("candidate {field:?} appears twice")));
            }
            order.push(c);
        }
        rankings.push(Ranking::from_order(&order).map_err(|e| bad(e.to_string()))?);
    }
    if rankings.is_empty() {
        return Err(CliError::Input(format!("{}: no rankings", path.display())));
    }
    Ok(rankings)
}

pub fn load(rankings: &Path, groups: &Path) -> CliResult<Dataset> {
    let (candidate_ids, group_labels, group_of) = read_groups(groups)?;
    let rankings = read_rankings(rankings, &candidate_ids)?;
    Ok(Dataset {
        candidate_ids,
        group_labels,
        group_of,
        rankings,
    })
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    File::create(path).map(BufWriter::new).map_err(|e| CliError::io(path, e))
}

pub fn write_rankings(path: &Path, rows: &[Vec<String>]) -> CliResult<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(create(path)?);
    for row in rows {
        w.write_record(row).map_err(|e| CliError::io(path, e))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

pub fn write_groups(path: &Path, rows: &[(String, String)]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    w.write_record(["candidate", "group"]).map_err(|e| CliError::io(path, e))?;
    for (c, g) in rows {
        w.write_record([c, g]).map_err(|e| CliError::io(path, e))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Writes `text` to `path`, or to stdout when `path` is `None`.
pub fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => {
            let mut f = create(p)?;
            f.write_all(text.as_bytes()).map_err(|e| CliError::io(p, e))?;
            f.flush().map_err(|e| CliError::io(p, e))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Input(format!("stdout: {e}")))
        }
    }
}
