//! The Adleman-Lipton abstract machine.
//!
//! Tubes are multisets of [`Strand`]s. All six operations (append, copy,
//! merge, extract, detect, discard) go through a [`Machine`], which counts
//! them, retires discarded tubes, and tracks how many strands are alive
//! across every tube it has issued.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::AddAssign;
use core::str::FromStr;

use thiserror::Error;

use crate::codec::{render, Codebook, CodecError, Codeword, Strand};
use crate::multiset::Multiset;

/// How extract decides whether a strand "has S in its sequence".
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum MatchMode {
    /// Token membership.
    #[default]
    Symbolic,
    /// Substring search in the rendered nucleotide string.
    Nucleotide,
}

impl MatchMode {
    pub fn as_str(self) -> &'static str {
        match self {
            MatchMode::Symbolic => "symbolic",
            MatchMode::Nucleotide => "nucleotide",
        }
    }
}

impl fmt::Display for MatchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MatchMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "symbolic" => Ok(MatchMode::Symbolic),
            "nucleotide" => Ok(MatchMode::Nucleotide),
            other => Err(format!(
                "unknown match mode `{other}` (expected symbolic or nucleotide)"
            )),
        }
    }
}

/// Per-operation counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OpCounter {
    pub append: u64,
    pub copy: u64,
    pub merge: u64,
    pub extract: u64,
    pub detect: u64,
    pub discard: u64,
}

impl OpCounter {
    pub fn total(&self) -> u64 {
        self.append + self.copy + self.merge + self.extract + self.detect + self.discard
    }
}

impl AddAssign for OpCounter {
    fn add_assign(&mut self, rhs: Self) {
        self.append += rhs.append;
        self.copy += rhs.copy;
        self.merge += rhs.merge;
        self.extract += rhs.extract;
        self.detect += rhs.detect;
        self.discard += rhs.discard;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TubeId(u64);

/// A labeled multiset of strands.
///
/// Cloning a tube clones the handle: the clone shares the original's
/// identity, so discarding one retires both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tube {
    id: TubeId,
    label: String,
    contents: Multiset<Strand>,
}

impl Tube {
    pub fn id(&self) -> TubeId {
        self.id
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Strand count, with multiplicity.
    pub fn len(&self) -> u64 {
        self.contents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contents.is_empty()
    }

    pub fn contents(&self) -> &Multiset<Strand> {
        &self.contents
    }

    /// Distinct strands with their multiplicities.
    pub fn strands(&self) -> impl Iterator<Item = (&Strand, u64)> + '_ {
        self.contents.iter()
    }

    /// True if no strand occurs more than once.
    pub fn is_set(&self) -> bool {
        self.contents.max_multiplicity() <= 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineFault {
    #[error("tube `{0}` was discarded")]
    Retired(String),
    #[error("tube `{0}` was not issued by this machine")]
    Foreign(String),
    #[error("tube `{tube}` already holds a strand with vertex {vertex}")]
    DuplicateVertex { tube: String, vertex: u32 },
    #[error("nucleotide extract needs a codebook that passed validation")]
    UnsoundCodebook,
    #[error(transparent)]
    Codec(#[from] CodecError),
}

/// Issues tubes and performs the biological operations on them.
#[derive(Debug, Default)]
pub struct Machine {
    next_id: u64,
    sizes: BTreeMap<TubeId, u64>,
    retired: BTreeSet<TubeId>,
    counter: OpCounter,
    live: u64,
    peak: u64,
}

impl Machine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn counter(&self) -> OpCounter {
        self.counter
    }

    /// Strands currently held by all live tubes.
    pub fn live_strands(&self) -> u64 {
        self.live
    }

    /// Largest value [`Machine::live_strands`] has reached after any operation.
    pub fn peak_strands(&self) -> u64 {
        self.peak
    }

    /// A fresh empty tube.
    pub fn tube(&mut self, label: &str) -> Tube {
        self.tube_with(label, Multiset::new())
    }

    /// A fresh tube filled with `contents`. Not counted as an operation:
    /// this is how material enters the machine.
    pub fn tube_with(&mut self, label: &str, contents: Multiset<Strand>) -> Tube {
        let tube = self.issue(String::from(label), contents);
        self.settle();
        tube
    }

    fn check(&self, tube: &Tube) -> Result<(), MachineFault> {
        if self.retired.contains(&tube.id) {
            Err(MachineFault::Retired(tube.label.clone()))
        } else if !self.sizes.contains_key(&tube.id) {
            Err(MachineFault::Foreign(tube.label.clone()))
        } else {
            Ok(())
        }
    }

    fn resize(&mut self, tube: &Tube) {
        let slot = self.sizes.get_mut(&tube.id).expect("registered tube");
        self.live = self.live - *slot + tube.len();
        *slot = tube.len();
    }

    fn settle(&mut self) {
        self.peak = self.peak.max(self.live);
    }

    fn issue(&mut self, label: String, contents: Multiset<Strand>) -> Tube {
        let id = TubeId(self.next_id);
        self.next_id += 1;
        let tube = Tube {
            id,
            label,
            contents,
        };
        self.sizes.insert(id, 0);
        self.resize(&tube);
        tube
    }

    /// Appends the codeword's token to the end of every strand in `tube`.
    pub fn append(&mut self, tube: &mut Tube, cw: &Codeword) -> Result<(), MachineFault> {
        self.check(tube)?;
        if tube.strands().any(|(s, _)| s.has_vertex(cw.vertex)) {
            return Err(MachineFault::DuplicateVertex {
                tube: tube.label.clone(),
                vertex: cw.vertex,
            });
        }
        let token = cw.token();
        tube.contents.update_each(|s| s.push(token));
        self.counter.append += 1;
        Ok(())
    }

    /// Pours `src` into `count` identical tubes labeled `<src>.1`, `<src>.2`, ...
    pub fn copy(&mut self, src: &mut Tube, count: usize) -> Result<Vec<Tube>, MachineFault> {
        let labels: Vec<String> = (1..=count).map(|i| format!("{}.{i}", src.label)).collect();
        let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
        self.copy_labeled(src, &labels)
    }

    /// Like [`Machine::copy`], one output tube per label. `src` is left empty.
    pub fn copy_labeled(
        &mut self,
        src: &mut Tube,
        labels: &[&str],
    ) -> Result<Vec<Tube>, MachineFault> {
        self.check(src)?;
        assert!(!labels.is_empty(), "copy needs at least one destination");
        let contents = src.contents.take();
        let mut out = Vec::with_capacity(labels.len());
        for label in &labels[1..] {
            out.push(self.issue(String::from(*label), contents.clone()));
        }
        out.insert(0, self.issue(String::from(labels[0]), contents));
        self.resize(src);
        self.settle();
        self.counter.copy += 1;
        Ok(out)
    }

    /// Pours every source into `dest`. Sources are left empty.
    pub fn merge(&mut self, dest: &mut Tube, sources: &mut [Tube]) -> Result<(), MachineFault> {
        self.check(dest)?;
        for src in sources.iter() {
            self.check(src)?;
        }
        for src in sources.iter_mut() {
            let poured = src.contents.take();
            dest.contents = dest.contents.take().union(poured);
            self.resize(src);
        }
        self.resize(dest);
        self.settle();
        self.counter.merge += 1;
        Ok(())
    }

    /// Splits `src` into (`+`, `-`): strands containing the codeword and the
    /// rest. `src` is left empty.
    pub fn extract(
        &mut self,
        src: &mut Tube,
        cw: &Codeword,
        mode: MatchMode,
        cb: &Codebook,
    ) -> Result<(Tube, Tube), MachineFault> {
        let plus = format!("{}+", src.label);
        let minus = format!("{}-", src.label);
        self.extract_labeled(src, cw, mode, cb, (&plus, &minus))
    }

    /// Like [`Machine::extract`] with explicit labels for the `+` and `-` tubes.
    pub fn extract_labeled(
        &mut self,
        src: &mut Tube,
        cw: &Codeword,
        mode: MatchMode,
        cb: &Codebook,
        (plus_label, minus_label): (&str, &str),
    ) -> Result<(Tube, Tube), MachineFault> {
        self.check(src)?;
        let (plus, minus) = match mode {
            MatchMode::Symbolic => {
                let token = cw.token();
                src.contents.take().partition(|s| s.contains(token))
            }
            MatchMode::Nucleotide => {
                if !cb.is_sound() {
                    return Err(MachineFault::UnsoundCodebook);
                }
                // Render up front so a codec error leaves `src` untouched.
                let hits = src
                    .strands()
                    .map(|(s, _)| render(s, cb).map(|dna| dna.contains(&cw.sequence)))
                    .collect::<Result<Vec<bool>, _>>()?;
                let mut hits = hits.into_iter();
                src.contents
                    .take()
                    .partition(|_| hits.next().expect("one verdict per strand"))
            }
        };
        let plus = self.issue(String::from(plus_label), plus);
        let minus = self.issue(String::from(minus_label), minus);
        self.resize(src);
        self.settle();
        self.counter.extract += 1;
        Ok((plus, minus))
    }

    /// True if the tube holds at least one strand.
    pub fn detect(&mut self, tube: &Tube) -> Result<bool, MachineFault> {
        self.check(tube)?;
        self.counter.detect += 1;
        Ok(!tube.is_empty())
    }

    /// Drops the tube's contents and retires its handle.
    pub fn discard(&mut self, tube: Tube) -> Result<(), MachineFault> {
        self.check(&tube)?;
        let size = self.sizes.remove(&tube.id).expect("checked");
        self.live -= size;
        self.retired.insert(tube.id);
        self.counter.discard += 1;
        Ok(())
    }
}
