//! Checkpoint files for resumable sharded searches.
//!
//! A checkpoint is a sequence of length-prefixed binary records, one per
//! completed shard: a little-endian u32 payload length followed by the shard
//! id (u32), the last f-table value processed (u64) and the shard's pair
//! count (u64). Found pairs are persisted next to the checkpoint in a
//! `<name>.pairs` text file with one `shard f g` line per pair, so a resumed
//! run can rebuild the full result list without rescanning finished shards.
//!
//! A checkpoint records nothing about the search kind or size; callers must
//! keep one checkpoint file per search configuration.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

const PAYLOAD_LEN: u32 = 20;

/// Progress marker for one completed shard.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckpointRecord {
    pub shard: u32,
    pub last_f: u64,
    pub partial_count: u64,
}

pub(crate) fn pairs_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_os_string();
    name.push(".pairs");
    PathBuf::from(name)
}

/// Append one completed-shard record (and its pairs) to the checkpoint.
pub fn append_record(path: &Path, record: &CheckpointRecord, pairs: &[(u64, u64)]) -> Result<()> {
    let mut pairs_file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(pairs_path(path))?;
    for &(f, g) in pairs {
        writeln!(pairs_file, "{} {} {}", record.shard, f, g)?;
    }
    pairs_file.flush()?;

    // the record is written after the pairs so a torn write re-runs the shard
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut buf = Vec::with_capacity(4 + PAYLOAD_LEN as usize);
    buf.extend_from_slice(&PAYLOAD_LEN.to_le_bytes());
    buf.extend_from_slice(&record.shard.to_le_bytes());
    buf.extend_from_slice(&record.last_f.to_le_bytes());
    buf.extend_from_slice(&record.partial_count.to_le_bytes());
    file.write_all(&buf)?;
    file.flush()?;
    Ok(())
}

/// Read all complete records; a truncated tail (torn write) is ignored.
pub fn read_records(path: &Path) -> Result<Vec<CheckpointRecord>> {
    if !path.exists() {
        return Ok(vec![]);
    }
    let mut data = Vec::new();
    File::open(path)?.read_to_end(&mut data)?;
    let mut records = vec![];
    let mut at = 0usize;
    while at + 4 <= data.len() {
        let len = u32::from_le_bytes(data[at..at + 4].try_into().unwrap()) as usize;
        if len != PAYLOAD_LEN as usize {
            return Err(Error::InvalidInput(format!(
                "checkpoint record at offset {at} has payload length {len}, expected {PAYLOAD_LEN}"
            )));
        }
        if at + 4 + len > data.len() {
            break;
        }
        let p = at + 4;
        records.push(CheckpointRecord {
            shard: u32::from_le_bytes(data[p..p + 4].try_into().unwrap()),
            last_f: u64::from_le_bytes(data[p + 4..p + 12].try_into().unwrap()),
            partial_count: u64::from_le_bytes(data[p + 12..p + 20].try_into().unwrap()),
        });
        at += 4 + len;
    }
    Ok(records)
}

/// Read the persisted pairs of the given completed shards.
pub(crate) fn read_pairs(path: &Path, done: &dyn Fn(u32) -> bool) -> Result<Vec<(u64, u64)>> {
    let pairs_file = pairs_path(path);
    if !pairs_file.exists() {
        return Ok(vec![]);
    }
    let reader = BufReader::new(File::open(pairs_file)?);
    let mut pairs = vec![];
    for line in reader.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let parse = |s: Option<&str>| -> Result<u64> {
            s.and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::InvalidInput(format!("malformed pairs line \"{line}\"")))
        };
        let shard = parse(fields.next())? as u32;
        let f = parse(fields.next())?;
        let g = parse(fields.next())?;
        if done(shard) {
            pairs.push((f, g));
        }
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("search.ckpt");
        let a = CheckpointRecord {
            shard: 0,
            last_f: 15,
            partial_count: 3,
        };
        let b = CheckpointRecord {
            shard: 1,
            last_f: 31,
            partial_count: 0,
        };
        append_record(&path, &a, &[(1, 2), (3, 4), (5, 6)]).unwrap();
        append_record(&path, &b, &[]).unwrap();
        assert_eq!(read_records(&path).unwrap(), vec![a, b]);
        let pairs = read_pairs(&path, &|s| s == 0).unwrap();
        assert_eq!(pairs, vec![(1, 2), (3, 4), (5, 6)]);
    }

    #[test]
    fn truncated_tail_is_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("search.ckpt");
        let rec = CheckpointRecord {
            shard: 2,
            last_f: 7,
            partial_count: 1,
        };
        append_record(&path, &rec, &[]).unwrap();
        // simulate a torn write of the next record
        let mut file = OpenOptions::new().append(true).open(&path).unwrap();
        file.write_all(&PAYLOAD_LEN.to_le_bytes()).unwrap();
        file.write_all(&[0u8; 5]).unwrap();
        assert_eq!(read_records(&path).unwrap(), vec![rec]);
    }

    #[test]
    fn missing_files_read_as_empty() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("absent.ckpt");
        assert!(read_records(&path).unwrap().is_empty());
        assert!(read_pairs(&path, &|_| true).unwrap().is_empty());
    }
}
