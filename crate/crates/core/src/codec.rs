//! graph6, sparse6 and edge-list codecs.
//!
//! graph6 and sparse6 follow nauty's `formats.txt`. The edge-list format is a
//! header line `n m` followed by `m` lines `u v`; `#` starts a comment that
//! runs to the end of the line.

use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use crate::error::{precondition, Error, Result};
use crate::graph::{build_graph, Multigraph, MAX_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    Graph6,
    Sparse6,
    EdgeList,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Graph6 => "g6",
            Format::Sparse6 => "s6",
            Format::EdgeList => "elist",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "g6" | "graph6" => Ok(Format::Graph6),
            "s6" | "sparse6" => Ok(Format::Sparse6),
            "elist" | "edgelist" | "edge-list" => Ok(Format::EdgeList),
            other => Err(precondition(format!("unknown format `{other}`; expected g6, s6 or elist"))),
        }
    }
}

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

pub fn parse_graph(text: &[u8], format: Format) -> Result<Multigraph> {
    match format {
        Format::Graph6 => parse_graph6(trim_line(text)),
        Format::Sparse6 => parse_sparse6(trim_line(text)),
        Format::EdgeList => parse_edge_list(text),
    }
}

/// Serializes `g`. graph6 and sparse6 output is a single line without the
/// trailing newline; edge-list output ends with a newline.
pub fn emit_graph(g: &Multigraph, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Graph6 => emit_graph6(g),
        Format::Sparse6 => Ok(emit_sparse6(g)),
        Format::EdgeList => Ok(emit_edge_list(g)),
    }
}

fn trim_line(text: &[u8]) -> &[u8] {
    let mut end = text.len();
    while end > 0 && (text[end - 1] == b'\n' || text[end - 1] == b'\r') {
        end -= 1;
    }
    &text[..end]
}

// -------------------------------------------------------------------- shared pieces

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Decodes `N(n)` starting at `pos`; returns `(n, next position)`.
fn decode_size(data: &[u8], pos: usize, base: usize) -> Result<(usize, usize)> {
    let sextet = |i: usize| -> Result<usize> {
        match data.get(i) {
            Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as usize),
            Some(&b) => Err(parse_err(base + i, format!("byte {b} outside 63..=126"))),
            None => Err(parse_err(base + i, "truncated vertex count")),
        }
    };
    let first = sextet(pos)?;
    if first < 63 {
        return Ok((first, pos + 1));
    }
    if sextet(pos + 1)? == 63 {
        let mut n = 0;
        for i in 0..6 {
            n = n << 6 | sextet(pos + 2 + i)?;
        }
        Ok((n, pos + 8))
    } else {
        let mut n = 0;
        for i in 0..3 {
            n = n << 6 | sextet(pos + 1 + i)?;
        }
        Ok((n, pos + 4))
    }
}

struct BitWriter {
    out: Vec<u8>,
    acc: u8,
    filled: u8,
}

impl BitWriter {
    fn new(out: Vec<u8>) -> Self {
        BitWriter { out, acc: 0, filled: 0 }
    }

    fn push(&mut self, bit: bool) {
        self.acc = self.acc << 1 | bit as u8;
        self.filled += 1;
        if self.filled == 6 {
            self.out.push(self.acc + 63);
            self.acc = 0;
            self.filled = 0;
        }
    }

    fn push_bits(&mut self, value: usize, width: usize) {
        for i in (0..width).rev() {
            self.push(value >> i & 1 == 1);
        }
    }

    fn pending(&self) -> usize {
        if self.filled == 0 {
            0
        } else {
            6 - self.filled as usize
        }
    }
}

fn check_vertex_count(n: usize, offset: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(parse_err(offset, format!("{n} vertices exceeds the supported maximum {MAX_VERTICES}")));
    }
    Ok(())
}

// -------------------------------------------------------------------- graph6

fn parse_graph6(line: &[u8]) -> Result<Multigraph> {
    let base = if line.starts_with(b">>graph6<<") { 10 } else { 0 };
    let data = &line[base..];
    if data.is_empty() {
        return Err(parse_err(base, "empty graph6 line"));
    }
    let (n, mut pos) = decode_size(data, 0, base)?;
    check_vertex_count(n, base)?;
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if data.len() != pos + nbytes {
        return Err(parse_err(
            base + data.len().min(pos + nbytes),
            format!("expected {nbytes} payload bytes for n = {n}, found {}", data.len() - pos),
        ));
    }
    let mut pairs = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[pos + k / 6];
            if !(63..=126).contains(&byte) {
                return Err(parse_err(base + pos + k / 6, format!("byte {byte} outside 63..=126")));
            }
            if (byte - 63) >> (5 - k % 6) & 1 == 1 {
                pairs.push((i, j));
            }
            k += 1;
        }
    }
    // validate the tail byte and its padding
    if nbits % 6 != 0 {
        let last = data[pos + nbytes - 1];
        if !(63..=126).contains(&last) {
            return Err(parse_err(base + pos + nbytes - 1, format!("byte {last} outside 63..=126")));
        }
        let pad = 6 - nbits % 6;
        if (last - 63) & ((1 << pad) - 1) != 0 {
            return Err(parse_err(base + pos + nbytes - 1, "nonzero padding bits"));
        }
    }
    pos += nbytes;
    debug_assert_eq!(pos, data.len());
    build_graph(n, &pairs)
}

fn emit_graph6(g: &Multigraph) -> Result<Vec<u8>> {
    if !g.is_simple() {
        return Err(Error::NotSimple);
    }
    let n = g.vertex_count();
    let mut head = Vec::new();
    encode_size(n, &mut head);
    let mut w = BitWriter::new(head);
    for j in 1..n {
        for i in 0..j {
            w.push(g.adjacent(i, j));
        }
    }
    while w.pending() > 0 {
        w.push(false);
    }
    Ok(w.out)
}

// -------------------------------------------------------------------- sparse6

fn bits_for(n: usize) -> usize {
    // number of bits needed to write n - 1 in binary
    let mut k = 0;
    let mut x = n.saturating_sub(1);
    while x > 0 {
        k += 1;
        x >>= 1;
    }
    k
}

fn parse_sparse6(line: &[u8]) -> Result<Multigraph> {
    let base = if line.starts_with(b">>sparse6<<") { 11 } else { 0 };
    let data = &line[base..];
    if data.first() != Some(&b':') {
        return Err(parse_err(base, "sparse6 line must start with ':'"));
    }
    let (n, pos) = decode_size(data, 1, base)?;
    check_vertex_count(n, base + 1)?;
    let mut bits = Vec::with_capacity((data.len() - pos) * 6);
    for (i, &b) in data[pos..].iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(base + pos + i, format!("byte {b} outside 63..=126")));
        }
        for s in (0..6).rev() {
            bits.push((b - 63) >> s & 1 == 1);
        }
    }
    let k = bits_for(n);
    let mut pairs = Vec::new();
    if n >= 2 {
        let mut v = 0usize;
        let mut i = 0;
        while i + 1 + k <= bits.len() {
            let b = bits[i];
            let x = bits[i + 1..i + 1 + k].iter().fold(0usize, |acc, &bit| acc << 1 | bit as usize);
            let at = base + pos + i / 6;
            i += 1 + k;
            if b {
                v += 1;
            }
            if v >= n {
                break;
            }
            if x > v {
                v = x;
            } else if x == v {
                return Err(parse_err(at, format!("loop at vertex {x}")));
            } else {
                pairs.push((x, v));
            }
        }
    }
    build_graph(n, &pairs)
}

fn emit_sparse6(g: &Multigraph) -> Vec<u8> {
    let n = g.vertex_count();
    let mut head = vec![b':'];
    encode_size(n, &mut head);
    let mut w = BitWriter::new(head);
    let k = bits_for(n);
    let mut pairs: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.v, e.u)).collect();
    pairs.sort_unstable();
    let mut lastj = 0;
    for &(j, i) in &pairs {
        if j == lastj {
            w.push(false);
            w.push_bits(i, k);
        } else {
            w.push(true);
            if j > lastj + 1 {
                w.push_bits(j, k);
                w.push(false);
            }
            w.push_bits(i, k);
            lastj = j;
        }
    }
    let pad = w.pending();
    if pad > 0 {
        if k < 6 && pad > k && lastj + 2 == n && n == 1 << k {
            w.push(false);
            for _ in 1..pad {
                w.push(true);
            }
        } else {
            for _ in 0..pad {
                w.push(true);
            }
        }
    }
    w.out
}

// -------------------------------------------------------------------- edge list

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_edge_list(text: &[u8]) -> Result<Multigraph> {
    let s = std::str::from_utf8(text).map_err(|e| parse_err(e.valid_up_to(), "invalid UTF-8"))?;
    let mut lines = LineCursor::new(s);
    let g = read_edge_list(&mut lines)?.ok_or_else(|| parse_err(0, "no graph found"))?;
    if let Some((off, _)) = lines.next_content() {
        return Err(parse_err(off, "trailing content after edge list"));
    }
    Ok(g)
}

/// Lines with comments removed and their byte offsets.
struct LineCursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> LineCursor<'a> {
    fn new(text: &'a str) -> Self {
        LineCursor { text, pos: 0 }
    }

    /// Next non-blank line (after comment stripping).
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        while self.pos < self.text.len() {
            let start = self.pos;
            let rest = &self.text[start..];
            let end = rest.find('\n').map_or(rest.len(), |i| i + 1);
            self.pos += end;
            let body = strip_comment(rest[..end].trim_end_matches(['\n', '\r']));
            if !body.trim().is_empty() {
                return Some((start, body));
            }
        }
        None
    }
}

fn parse_pair(offset: usize, line: &str, what: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut num = || -> Result<usize> {
        let tok = it.next().ok_or_else(|| parse_err(offset, format!("{what}: expected two integers")))?;
        tok.parse::<usize>()
            .map_err(|_| parse_err(offset, format!("{what}: `{tok}` is not a nonnegative integer")))
    };
    let a = num()?;
    let b = num()?;
    if it.next().is_some() {
        return Err(parse_err(offset, format!("{what}: expected exactly two integers")));
    }
    Ok((a, b))
}

fn read_edge_list(lines: &mut LineCursor) -> Result<Option<Multigraph>> {
    let Some((off, header)) = lines.next_content() else {
        return Ok(None);
    };
    let (n, m) = parse_pair(off, header, "header")?;
    check_vertex_count(n, off)?;
    let mut pairs = Vec::with_capacity(m);
    for _ in 0..m {
        let (eoff, line) = lines
            .next_content()
            .ok_or_else(|| parse_err(lines.pos, format!("expected {m} edge lines, found {}", pairs.len())))?;
        let (u, v) = parse_pair(eoff, line, "edge")?;
        if u >= n || v >= n {
            return Err(parse_err(eoff, format!("vertex out of range 0..{n}")));
        }
        if u == v {
            return Err(parse_err(eoff, format!("loop at vertex {u}")));
        }
        pairs.push((u, v));
    }
    Ok(Some(build_graph(n, &pairs)?))
}

fn emit_edge_list(g: &Multigraph) -> Vec<u8> {
    let mut s = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.sorted_pairs() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s.into_bytes()
}

// -------------------------------------------------------------------- streams

/// One graph read from a stream, tagged with the 1-based line it starts on.
#[derive(Debug)]
pub struct StreamItem {
    pub line: usize,
    pub graph: Result<Multigraph>,
}

/// Reads successive graphs from a line-oriented stream. graph6 and sparse6
/// inputs hold one graph per line; edge-list inputs concatenate records.
pub struct GraphReader<R: BufRead> {
    input: R,
    format: Format,
    line_no: usize,
    buf: String,
    done: bool,
}

impl<R: BufRead> GraphReader<R> {
    pub fn new(input: R, format: Format) -> Self {
        GraphReader {
            input,
            format,
            line_no: 0,
            buf: String::new(),
            done: false,
        }
    }

    fn read_line(&mut self) -> Option<std::io::Result<String>> {
        self.buf.clear();
        match self.input.read_line(&mut self.buf) {
            Ok(0) => None,
            Ok(_) => {
                self.line_no += 1;
                Some(Ok(std::mem::take(&mut self.buf)))
            }
            Err(e) => Some(Err(e)),
        }
    }

    fn io_item(&mut self, e: std::io::Error) -> StreamItem {
        self.done = true;
        StreamItem {
            line: self.line_no,
            graph: Err(parse_err(0, format!("read error: {e}"))),
        }
    }

    fn next_edge_list(&mut self) -> Option<StreamItem> {
        // gather the header
        let (start, header) = loop {
            let line = match self.read_line()? {
                Ok(l) => l,
                Err(e) => return Some(self.io_item(e)),
            };
            let body = strip_comment(line.trim_end_matches(['\n', '\r'])).trim().to_string();
            if !body.is_empty() {
                break (self.line_no, body);
            }
        };
        let parsed = parse_pair(0, &header, "header");
        let (n, m) = match parsed {
            Ok(p) => p,
            Err(e) => return Some(StreamItem { line: start, graph: Err(e) }),
        };
        let mut text = format!("{n} {m}\n");
        let mut got = 0;
        while got < m {
            let line = match self.read_line() {
                None => break,
                Some(Ok(l)) => l,
                Some(Err(e)) => return Some(self.io_item(e)),
            };
            let body = strip_comment(line.trim_end_matches(['\n', '\r'])).trim().to_string();
            if body.is_empty() {
                continue;
            }
            text.push_str(&body);
            text.push('\n');
            got += 1;
        }
        Some(StreamItem {
            line: start,
            graph: parse_edge_list(text.as_bytes()),
        })
    }
}

impl<R: BufRead> Iterator for GraphReader<R> {
    type Item = StreamItem;

    fn next(&mut self) -> Option<StreamItem> {
        if self.done {
            return None;
        }
        if self.format == Format::EdgeList {
            return self.next_edge_list();
        }
        loop {
            let line = match self.read_line()? {
                Ok(l) => l,
                Err(e) => return Some(self.io_item(e)),
            };
            let t = trim_line(line.as_bytes());
            if t.is_empty() || t == b">>graph6<<" || t == b">>sparse6<<" {
                continue;
            }
            return Some(StreamItem {
                line: self.line_no,
                graph: parse_graph(t, self.format),
            });
        }
    }
}
