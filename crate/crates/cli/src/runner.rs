//! Input records and the order-preserving parallel runner.

use std::fs::File;
use std::io::{self, BufRead, BufReader};

use mcgraph::codec::{Format, GraphReader};
use mcgraph::families::{gen_family, Family};
use mcgraph::Multigraph;
use rayon::prelude::*;

/// One graph of the input, or the reason it could not be read.
pub struct Record {
    pub index: usize,
    pub source: String,
    pub graph: Result<Multigraph, String>,
}

pub type Records = Box<dyn Iterator<Item = Record>>;

/// Graphs read from a file, or from stdin when `path` is absent or `-`.
pub fn read_stream(path: Option<&str>, format: Format) -> io::Result<Records> {
    let (reader, label): (Box<dyn BufRead>, String) = match path {
        None | Some("-") => (Box::new(BufReader::new(io::stdin())), "stdin".to_string()),
        Some(p) => (Box::new(BufReader::new(File::open(p)?)), p.to_string()),
    };
    let items = GraphReader::new(reader, format).enumerate().map(move |(index, item)| Record {
        index,
        source: format!("{label}:{}", item.line),
        graph: item.graph.map_err(|e| e.to_string()),
    });
    Ok(Box::new(items))
}

/// Members of a named family, one per parameter value.
pub fn family_stream(family: Family, params: Vec<Option<usize>>) -> Records {
    let items = params.into_iter().enumerate().map(move |(index, n)| Record {
        index,
        source: match n {
            Some(n) => format!("family:{family}:{n}"),
            None => format!("family:{family}"),
        },
        graph: gen_family(family, n).map_err(|e| e.to_string()),
    });
    Box::new(items)
}

/// Maps records through `work` on a pool of `jobs` threads and hands the
/// results to `sink` in input order. At most one batch is held in memory.
pub struct Runner {
    pool: rayon::ThreadPool,
    batch: usize,
}

impl Runner {
    pub fn new(jobs: usize) -> Result<Self, String> {
        let jobs = jobs.max(1);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| e.to_string())?;
        Ok(Runner { pool, batch: jobs * 256 })
    }

    pub fn run<T, W, S>(&self, records: Records, work: W, mut sink: S) -> io::Result<()>
    where
        T: Send,
        W: Fn(&Record) -> T + Sync,
        S: FnMut(&Record, T) -> io::Result<()>,
    {
        let mut records = records.peekable();
        while records.peek().is_some() {
            let batch: Vec<Record> = records.by_ref().take(self.batch).collect();
            let out: Vec<T> = self.pool.install(|| batch.par_iter().map(&work).collect());
            for (r, t) in batch.iter().zip(out) {
                sink(r, t)?;
            }
        }
        Ok(())
    }
}
