//! DNA codewords for `(vertex, color)` pairs and the strands built from them.
//!
//! A candidate coloring of vertices `1..=i` is the concatenation of one
//! codeword per vertex, in vertex order. Substring-based extraction is only
//! meaningful when no codeword can be found straddling a junction between two
//! others, so every [`Codebook`] is checked for that on construction.

use alloc::borrow::Cow;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::graph::Vertex;

/// Color index, `0..k`.
pub type Color = u32;

/// Display name for a color: red, green and blue for the first three, then
/// `color3`, `color4`, and so on.
pub fn color_name(color: Color) -> Cow<'static, str> {
    match color {
        0 => Cow::Borrowed("red"),
        1 => Cow::Borrowed("green"),
        2 => Cow::Borrowed("blue"),
        c => Cow::Owned(format!("color{c}")),
    }
}

pub const BASES: [u8; 4] = *b"ACGT";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid base `{found}` at position {position}")]
pub struct InvalidBase {
    pub position: usize,
    pub found: char,
}

/// A nucleotide string over `{A, C, G, T}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DnaSequence(Vec<u8>);

impl DnaSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_bases(bases: &[u8]) -> Result<Self, InvalidBase> {
        if let Some(position) = bases.iter().position(|b| !BASES.contains(b)) {
            return Err(InvalidBase {
                position,
                found: bases[position] as char,
            });
        }
        Ok(DnaSequence(bases.to_vec()))
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        core::str::from_utf8(&self.0).expect("bases are ASCII")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn extend(&mut self, other: &DnaSequence) {
        self.0.extend_from_slice(&other.0);
    }

    /// Substring test.
    pub fn contains(&self, needle: &DnaSequence) -> bool {
        contains_subslice(&self.0, &needle.0)
    }
}

fn contains_subslice(haystack: &[u8], needle: &[u8]) -> bool {
    needle.is_empty() || haystack.windows(needle.len()).any(|w| w == needle)
}

impl FromStr for DnaSequence {
    type Err = InvalidBase;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_bases(s.as_bytes())
    }
}

impl fmt::Display for DnaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// "Vertex `vertex` has color `color`."
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Token {
    pub vertex: Vertex,
    pub color: Color,
}

impl Token {
    pub const fn new(vertex: Vertex, color: Color) -> Self {
        Token { vertex, color }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", color_name(self.color), self.vertex)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub vertex: Vertex,
    pub color: Color,
    pub sequence: DnaSequence,
}

impl Codeword {
    pub fn token(&self) -> Token {
        Token::new(self.vertex, self.color)
    }
}

/// An ordered sequence of tokens: the symbolic form of a DNA strand.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct Strand {
    tokens: Vec<Token>,
}

impl Strand {
    /// The blank strand.
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_tokens(tokens: Vec<Token>) -> Self {
        Strand { tokens }
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn contains(&self, token: Token) -> bool {
        self.tokens.contains(&token)
    }

    pub fn has_vertex(&self, vertex: Vertex) -> bool {
        self.tokens.iter().any(|t| t.vertex == vertex)
    }

    pub fn push(&mut self, token: Token) {
        self.tokens.push(token);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Provenance {
    Table1,
    Generated {
        seed: u64,
        length: usize,
    },
    /// Loaded from an external document.
    External,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodebookError {
    #[error("codeword for ({vertex}, {color}) is outside the {n}x{k} codebook")]
    OutOfRange {
        vertex: Vertex,
        color: Color,
        n: Vertex,
        k: Color,
    },
    #[error("more than one codeword for vertex {vertex}, color {color}")]
    Repeated { vertex: Vertex, color: Color },
    #[error("no codeword for vertex {vertex}, color {color}")]
    Missing { vertex: Vertex, color: Color },
    #[error("codeword for vertex {vertex}, color {color} is empty")]
    EmptySequence { vertex: Vertex, color: Color },
    #[error("color count must be at least 1")]
    NoColors,
    #[error("codeword length must be at least 4, got {0}")]
    TooShort(usize),
    #[error(
        "gave up on codeword for vertex {vertex}, color {color} after {attempts} attempts; \
         try a longer codeword length"
    )]
    GenerationFailed {
        vertex: Vertex,
        color: Color,
        attempts: usize,
    },
}

/// One codeword per `(vertex, color)` for `n` vertices and `k` colors.
///
/// Every constructor runs [`validate_codebook`]; [`Codebook::is_sound`]
/// reports whether substring extraction on this codebook agrees with token
/// membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    n: Vertex,
    k: Color,
    provenance: Provenance,
    // Indexed by (vertex - 1) * k + color.
    entries: Vec<Codeword>,
    sound: bool,
}

impl Codebook {
    pub fn from_entries<I>(
        n: Vertex,
        k: Color,
        provenance: Provenance,
        entries: I,
    ) -> Result<Self, CodebookError>
    where
        I: IntoIterator<Item = Codeword>,
    {
        if k == 0 {
            return Err(CodebookError::NoColors);
        }
        let mut slots: Vec<Option<Codeword>> = (0..n as usize * k as usize).map(|_| None).collect();
        for cw in entries {
            let (vertex, color) = (cw.vertex, cw.color);
            if vertex == 0 || vertex > n || color >= k {
                return Err(CodebookError::OutOfRange {
                    vertex,
                    color,
                    n,
                    k,
                });
            }
            if cw.sequence.is_empty() {
                return Err(CodebookError::EmptySequence { vertex, color });
            }
            let slot = &mut slots[(vertex as usize - 1) * k as usize + color as usize];
            if slot.is_some() {
                return Err(CodebookError::Repeated { vertex, color });
            }
            *slot = Some(cw);
        }
        let mut entries = Vec::with_capacity(slots.len());
        for (idx, slot) in slots.into_iter().enumerate() {
            let vertex = (idx / k as usize) as Vertex + 1;
            let color = (idx % k as usize) as Color;
            entries.push(slot.ok_or(CodebookError::Missing { vertex, color })?);
        }
        let mut cb = Codebook {
            n,
            k,
            provenance,
            entries,
            sound: false,
        };
        cb.sound = validate_codebook(&cb).ok();
        Ok(cb)
    }

    pub fn vertex_count(&self) -> Vertex {
        self.n
    }

    pub fn color_count(&self) -> Color {
        self.k
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Common codeword length, or `None` if lengths differ (or the codebook
    /// is empty).
    pub fn length(&self) -> Option<usize> {
        let first = self.entries.first()?.sequence.len();
        self.entries
            .iter()
            .all(|cw| cw.sequence.len() == first)
            .then_some(first)
    }

    /// Whether the codebook passed validation.
    pub fn is_sound(&self) -> bool {
        self.sound
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn covers(&self, n: Vertex, k: Color) -> bool {
        n <= self.n && k <= self.k
    }

    pub fn get(&self, vertex: Vertex, color: Color) -> Option<&Codeword> {
        if vertex == 0 || vertex > self.n || color >= self.k {
            return None;
        }
        self.entries
            .get((vertex as usize - 1) * self.k as usize + color as usize)
    }

    pub fn codeword(&self, token: Token) -> Option<&Codeword> {
        self.get(token.vertex, token.color)
    }

    /// Entries in `(vertex, color)` order.
    pub fn entries(&self) -> &[Codeword] {
        &self.entries
    }
}

const TABLE1: [[&str; 3]; 12] = [
    [
        "AAGGCAGGAACAGATCAACC",
        "CGTTCTAAATAGGGTCGTGT",
        "GATTAGACTTAGCTCGTCCG",
    ],
    [
        "CCACAATGTTATAATACCAC",
        "ATCTTAGCACGATTCTCCTG",
        "GTATATTCAAGTCTCGAGCC",
    ],
    [
        "TTTAGATGAACTCGCGTTC",
        "TGGCACTCTTAAATCGAATA",
        "TTGACAAGGAGGAGGATCCA",
    ],
    [
        "TCGGGGTAAAGTGATTACTG",
        "ACCGATCAGTAACTAAATTC",
        "CGATGAGCGCCCTGAGGGGC",
    ],
    [
        "CGCCGCGTAAAGGAGCCCGGT",
        "ACTTATCTTATAAGCGCCGG",
        "GGTCCAGCCTAACTTTTCAT",
    ],
    [
        "ATCTTGACCGCCAATATAAG",
        "CCAATTGTGCCAGCACGTTA",
        "AGATACCCGTCTGGTTCACC",
    ],
    [
        "TCGCTGCGATTTCGATTGTG",
        "CCTCAGCGCCTCCGCGTAGC",
        "GCTCATCGTCGAAGCGTAGA",
    ],
    [
        "GTTCAATCCTTGCAGCCTCG",
        "CGTATAGAGCTGCACCATAC",
        "CGCAGGCAATAAGGGATTG",
    ],
    [
        "CTCCGATTAATGCACATTTA",
        "GTTTCGCGGATAAGAAGTCGA",
        "GCGTCCTAGGATCGTTCATT",
    ],
    [
        "TTCCCTTTCCGGACTCTTCG",
        "GGCTACTTCTTGTTACTCCA",
        "TAACTGAATCGTCCAATCAC",
    ],
    [
        "CAAACCTGCTACGTCGCCAAT",
        "GGCTCCGAAACGATGGAAGT",
        "TTCTTGGGGCTTGGGCTATA",
    ],
    [
        "CTCACAGAATGCTGCGCAAA",
        "TAAATTTACTTCGGGACACC",
        "TCTCAACAGCGTCTGGAAGT",
    ],
];

/// The built-in 12-vertex, 3-color `table1` codebook, stored verbatim (several rows
/// are 19 or 21 bases long).
pub fn builtin_table1() -> Codebook {
    let entries = TABLE1.iter().enumerate().flat_map(|(v, row)| {
        row.iter().enumerate().map(move |(c, seq)| Codeword {
            vertex: v as Vertex + 1,
            color: c as Color,
            sequence: seq.parse().expect("table entries are DNA"),
        })
    });
    Codebook::from_entries(12, 3, Provenance::Table1, entries).expect("table is complete")
}

// Validation

/// Codeword `codeword` found inside `left ‖ right` at `offset`, not lined up
/// exactly with either half.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct JunctionViolation {
    pub codeword: Token,
    pub left: Token,
    pub right: Token,
    pub offset: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ValidationReport {
    pub duplicates: Vec<(Token, Token)>,
    pub junction_violations: Vec<JunctionViolation>,
    /// Smallest Hamming distance between two equal-length codewords.
    pub min_pairwise_hamming: Option<usize>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.duplicates.is_empty() && self.junction_violations.is_empty()
    }
}

fn hamming(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Exhaustively checks a codebook for repeated sequences and for codewords
/// that occur inside the concatenation of any two codewords (a codeword with
/// itself included) anywhere other than exactly over one of the two halves.
pub fn validate_codebook(cb: &Codebook) -> ValidationReport {
    let entries = cb.entries();
    let mut report = ValidationReport::default();

    for (i, a) in entries.iter().enumerate() {
        for b in &entries[i + 1..] {
            let (sa, sb) = (a.sequence.as_bytes(), b.sequence.as_bytes());
            if sa == sb {
                report.duplicates.push((a.token(), b.token()));
            }
            if sa.len() == sb.len() {
                let d = hamming(sa, sb);
                report.min_pairwise_hamming =
                    Some(report.min_pairwise_hamming.map_or(d, |m| m.min(d)));
            }
        }
    }

    let mut by_sequence: BTreeMap<&[u8], Vec<Token>> = BTreeMap::new();
    for cw in entries {
        by_sequence
            .entry(cw.sequence.as_bytes())
            .or_default()
            .push(cw.token());
    }
    let lengths: BTreeSet<usize> = entries.iter().map(|cw| cw.sequence.len()).collect();

    let mut joined = Vec::new();
    for x in entries {
        for y in entries {
            joined.clear();
            joined.extend_from_slice(x.sequence.as_bytes());
            joined.extend_from_slice(y.sequence.as_bytes());
            let split = x.sequence.len();
            for offset in 0..joined.len() {
                for &len in &lengths {
                    let Some(window) = joined.get(offset..offset + len) else {
                        break;
                    };
                    let aligned = (offset == 0 && len == split)
                        || (offset == split && len == y.sequence.len());
                    if aligned {
                        continue;
                    }
                    if let Some(hits) = by_sequence.get(window) {
                        report
                            .junction_violations
                            .extend(hits.iter().map(|&codeword| JunctionViolation {
                                codeword,
                                left: x.token(),
                                right: y.token(),
                                offset,
                            }));
                    }
                }
            }
        }
    }
    report
}

// Generation

/// Attempts per codeword before [`generate_codebook`] gives up.
pub const DEFAULT_ATTEMPTS: usize = 10_000;

/// Incremental junction check for a growing set of equal-length words.
struct JunctionGuard {
    len: usize,
    words: BTreeSet<Vec<u8>>,
    prefixes: BTreeSet<Vec<u8>>,
    suffixes: BTreeSet<Vec<u8>>,
}

impl JunctionGuard {
    fn new(len: usize) -> Self {
        JunctionGuard {
            len,
            words: BTreeSet::new(),
            prefixes: BTreeSet::new(),
            suffixes: BTreeSet::new(),
        }
    }

    /// Whether the set stays valid with `w` added.
    fn admits(&self, w: &[u8]) -> bool {
        let len = self.len;
        if self.words.contains(w) {
            return false;
        }
        // `w` straddling two existing words.
        for split in 1..len {
            if self.suffixes.contains(&w[..split]) && self.prefixes.contains(&w[split..]) {
                return false;
            }
        }
        // Any word (including `w`) straddling a junction that involves `w`.
        let hit = |window: &[u8]| window == w || self.words.contains(window);
        let mut joined = Vec::with_capacity(2 * len);
        let others = self.words.iter().map(Vec::as_slice).chain([w]);
        for other in others {
            for (left, right) in [(w, other), (other, w)] {
                joined.clear();
                joined.extend_from_slice(left);
                joined.extend_from_slice(right);
                if (1..len).any(|offset| hit(&joined[offset..offset + len])) {
                    return false;
                }
            }
        }
        true
    }

    fn insert(&mut self, w: Vec<u8>) {
        for split in 1..self.len {
            self.prefixes.insert(w[..split].to_vec());
            self.suffixes.insert(w[split..].to_vec());
        }
        self.words.insert(w);
    }
}

/// Samples `n * k` codewords of `length` bases from a ChaCha8 stream seeded
/// with `seed`, rejecting any draw that would make the codebook fail
/// validation. Output is a pure function of the arguments.
pub fn generate_codebook(
    n: Vertex,
    k: Color,
    length: usize,
    seed: u64,
) -> Result<Codebook, CodebookError> {
    generate_codebook_with_budget(n, k, length, seed, DEFAULT_ATTEMPTS)
}

pub fn generate_codebook_with_budget(
    n: Vertex,
    k: Color,
    length: usize,
    seed: u64,
    attempts: usize,
) -> Result<Codebook, CodebookError> {
    if k == 0 {
        return Err(CodebookError::NoColors);
    }
    if length < 4 {
        return Err(CodebookError::TooShort(length));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut guard = JunctionGuard::new(length);
    let mut entries = Vec::with_capacity(n as usize * k as usize);
    for vertex in 1..=n {
        for color in 0..k {
            let word = (0..attempts)
                .map(|_| {
                    (0..length)
                        .map(|_| BASES[(rng.next_u32() >> 30) as usize])
                        .collect::<Vec<u8>>()
                })
                .find(|w| guard.admits(w))
                .ok_or(CodebookError::GenerationFailed {
                    vertex,
                    color,
                    attempts,
                })?;
            entries.push(Codeword {
                vertex,
                color,
                sequence: DnaSequence(word.clone()),
            });
            guard.insert(word);
        }
    }
    let cb = Codebook::from_entries(n, k, Provenance::Generated { seed, length }, entries)?;
    debug_assert!(cb.is_sound());
    Ok(cb)
}

// Encoding and decoding

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("color {color} for vertex {vertex} is outside the codebook's {k} colors")]
    ColorOutOfRange {
        vertex: Vertex,
        color: Color,
        k: Color,
    },
    #[error("coloring skips vertex {0}; it must assign exactly vertices 1..=i")]
    VertexGap(Vertex),
    #[error("no codeword for {0}")]
    MissingCodeword(Token),
    #[error("no codeword matches at base {0}")]
    Unparsable(usize),
    #[error("codebook failed validation; decoding would be ambiguous")]
    UnsoundCodebook,
}

/// Encodes a coloring of the vertex prefix `1..=i` as the strand
/// `c_1 c_2 ... c_i`.
pub fn encode_assignment(
    cb: &Codebook,
    coloring: &BTreeMap<Vertex, Color>,
) -> Result<Strand, CodecError> {
    let mut strand = Strand::new();
    for (expected, (&vertex, &color)) in (1..).zip(coloring) {
        if vertex != expected {
            return Err(CodecError::VertexGap(expected));
        }
        if color >= cb.color_count() {
            return Err(CodecError::ColorOutOfRange {
                vertex,
                color,
                k: cb.color_count(),
            });
        }
        let token = Token::new(vertex, color);
        if cb.codeword(token).is_none() {
            return Err(CodecError::MissingCodeword(token));
        }
        strand.push(token);
    }
    Ok(strand)
}

/// Concatenates the codewords of `strand` in token order.
pub fn render(strand: &Strand, cb: &Codebook) -> Result<DnaSequence, CodecError> {
    let mut out = DnaSequence::new();
    for &token in strand.tokens() {
        let cw = cb
            .codeword(token)
            .ok_or(CodecError::MissingCodeword(token))?;
        out.extend(&cw.sequence);
    }
    Ok(out)
}

/// Splits `seq` back into codewords, left to right, taking the first
/// codeword that matches at each position.
pub fn decode_strand(seq: &DnaSequence, cb: &Codebook) -> Result<Strand, CodecError> {
    if !cb.is_sound() {
        return Err(CodecError::UnsoundCodebook);
    }
    let by_sequence: BTreeMap<&[u8], Token> = cb
        .entries()
        .iter()
        .map(|cw| (cw.sequence.as_bytes(), cw.token()))
        .collect();
    let lengths: BTreeSet<usize> = cb.entries().iter().map(|cw| cw.sequence.len()).collect();

    let bases = seq.as_bytes();
    let mut strand = Strand::new();
    let mut pos = 0;
    while pos < bases.len() {
        let (len, token) = lengths
            .iter()
            .filter_map(|&len| {
                let window = bases.get(pos..pos + len)?;
                by_sequence.get(window).map(|&t| (len, t))
            })
            .next()
            .ok_or(CodecError::Unparsable(pos))?;
        strand.push(token);
        pos += len;
    }
    Ok(strand)
}
