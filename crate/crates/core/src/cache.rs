//! Binary caches for the group, automorphism and pair stages.
//!
//! Layout: the 4-byte magic `WMAP`, a one-byte stage tag, a little-endian
//! `u32` format version, then a stage-specific payload of little-endian
//! `u32`s. Any mismatch in magic, tag or version is reported as stale so the
//! caller can rebuild.

use std::fs;
use std::path::Path;

use crate::aut::{AutGroup, Automorphism};
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::pairs::{classification_from_flags, PairClassification};
use crate::perm::Permutation;

const MAGIC: &[u8; 4] = b"WMAP";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum Stage {
    Group = b'G',
    Aut = b'A',
    Pairs = b'P',
}

impl Stage {
    pub fn file_name(self) -> &'static str {
        match self {
            Stage::Group => "group.bin",
            Stage::Aut => "aut.bin",
            Stage::Pairs => "pairs.bin",
        }
    }
}

struct Writer(Vec<u8>);

impl Writer {
    fn new(stage: Stage) -> Self {
        let mut buf = MAGIC.to_vec();
        buf.push(stage as u8);
        buf.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        Writer(buf)
    }

    fn u32(&mut self, v: u32) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }

    fn u32s(&mut self, vs: &[u32]) {
        self.u32(vs.len() as u32);
        for &v in vs {
            self.u32(v);
        }
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn open(buf: &'a [u8], stage: Stage) -> Result<Self> {
        if buf.len() < 9 || &buf[..4] != MAGIC || buf[4] != stage as u8 {
            return Err(Error::Cache(format!(
                "{} is not a {:?} cache",
                stage.file_name(),
                stage
            )));
        }
        let version = u32::from_le_bytes(buf[5..9].try_into().expect("4 bytes"));
        if version != FORMAT_VERSION {
            return Err(Error::Cache(format!(
                "{} has format version {version}, expected {FORMAT_VERSION}; rebuild it",
                stage.file_name()
            )));
        }
        Ok(Reader { buf, pos: 9 })
    }

    fn u32(&mut self) -> Result<u32> {
        let bytes = self
            .buf
            .get(self.pos..self.pos + 4)
            .ok_or_else(|| Error::Cache("truncated cache file".into()))?;
        self.pos += 4;
        Ok(u32::from_le_bytes(bytes.try_into().expect("4 bytes")))
    }

    fn u32s(&mut self) -> Result<Vec<u32>> {
        let len = self.u32()? as usize;
        if len > (self.buf.len() - self.pos) / 4 {
            return Err(Error::Cache("truncated cache file".into()));
        }
        (0..len).map(|_| self.u32()).collect()
    }

    fn finish(self) -> Result<()> {
        if self.pos != self.buf.len() {
            return Err(Error::Cache("trailing bytes in cache file".into()));
        }
        Ok(())
    }
}

pub fn encode_group(g: &GroupTable) -> Vec<u8> {
    let mut w = Writer::new(Stage::Group);
    w.u32s(&g.name().bytes().map(u32::from).collect::<Vec<_>>());
    w.u32(g.degree() as u32);
    w.u32(g.order() as u32);
    for p in g.elements() {
        for &i in p.images() {
            w.u32(i);
        }
    }
    w.u32s(g.gen_ids());
    w.0
}

pub fn decode_group(buf: &[u8]) -> Result<GroupTable> {
    let mut r = Reader::open(buf, Stage::Group)?;
    let name: String = r
        .u32s()?
        .into_iter()
        .map(|b| u8::try_from(b).map(char::from))
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Cache("bad group name".into()))?;
    let degree = r.u32()? as usize;
    let n = r.u32()? as usize;
    let mut elements = Vec::with_capacity(n);
    for _ in 0..n {
        let images = (0..degree).map(|_| r.u32()).collect::<Result<Vec<_>>>()?;
        elements.push(Permutation::new(images).map_err(|e| Error::Cache(e.to_string()))?);
    }
    let gens = r.u32s()?;
    r.finish()?;
    GroupTable::from_elements(name, elements, gens)
}

pub fn encode_aut(g: &GroupTable, aut: &AutGroup) -> Vec<u8> {
    let mut w = Writer::new(Stage::Aut);
    w.u32(g.order() as u32);
    w.u32(aut.order() as u32);
    for a in aut.autos() {
        for &x in &a.map {
            w.u32(x);
        }
    }
    w.0
}

pub fn decode_aut(g: &GroupTable, buf: &[u8]) -> Result<AutGroup> {
    let mut r = Reader::open(buf, Stage::Aut)?;
    let n = r.u32()? as usize;
    if n != g.order() {
        return Err(Error::Cache(format!(
            "automorphism cache is for order {n}, group has {}",
            g.order()
        )));
    }
    let count = r.u32()? as usize;
    let mut autos = Vec::with_capacity(count);
    for _ in 0..count {
        let map = (0..n).map(|_| r.u32()).collect::<Result<Vec<_>>>()?;
        if map.iter().any(|&x| x as usize >= n) {
            return Err(Error::Cache("automorphism image out of range".into()));
        }
        autos.push(Automorphism { map });
    }
    r.finish()?;
    AutGroup::from_list(g, autos)
}

pub fn encode_pairs(pc: &PairClassification) -> Vec<u8> {
    let mut w = Writer::new(Stage::Pairs);
    w.u32(pc.order() as u32);
    let words: Vec<u32> = pc
        .flags()
        .chunks(32)
        .map(|c| {
            c.iter()
                .enumerate()
                .fold(0u32, |acc, (i, &f)| acc | (f as u32) << i)
        })
        .collect();
    w.u32s(&words);
    w.0
}

pub fn decode_pairs(g: &GroupTable, aut: &AutGroup, buf: &[u8]) -> Result<PairClassification> {
    let mut r = Reader::open(buf, Stage::Pairs)?;
    let n = r.u32()? as usize;
    if n != g.order() {
        return Err(Error::Cache(format!(
            "pair cache is for order {n}, group has {}",
            g.order()
        )));
    }
    let words = r.u32s()?;
    r.finish()?;
    let flags: Vec<bool> = (0..n * n)
        .map(|i| words.get(i / 32).is_some_and(|w| w >> (i % 32) & 1 == 1))
        .collect();
    classification_from_flags(g, aut, &flags)
}

pub fn write(dir: &Path, stage: Stage, bytes: &[u8]) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(stage.file_name()), bytes)?;
    Ok(())
}

/// Reads a stage cache; `None` if the file does not exist.
pub fn read(dir: &Path, stage: Stage) -> Result<Option<Vec<u8>>> {
    match fs::read(dir.join(stage.file_name())) {
        Ok(b) => Ok(Some(b)),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e.into()),
    }
}
