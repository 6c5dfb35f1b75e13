//! `--metric` grammar: `lp:<p>` with `p >= 1` or `inf`, followed by any
//! number of `:snow:<beta>` suffixes.

use lipgeo::{Metric, NormSpec};

use crate::error::{CliError, Result};

pub fn parse_metric(spec: &str) -> Result<Metric> {
    let mut tokens = Tokens::new(spec);
    let head = tokens.next_token();
    if head.1 != "lp" {
        return Err(tokens.error(head.0, format!("expected `lp`, found {:?}", head.1)));
    }
    let exp = tokens.next_token();
    let norm = NormSpec::new(
        exp.1
            .parse()
            .map_err(|e: lipgeo::Error| tokens.error(exp.0, e.to_string()))?,
    );
    let mut metric = Metric::norm(norm);
    while !tokens.done() {
        let kw = tokens.next_token();
        if kw.1 != "snow" {
            return Err(tokens.error(kw.0, format!("expected `snow`, found {:?}", kw.1)));
        }
        let beta_tok = tokens.next_token();
        let beta: f64 = beta_tok
            .1
            .parse()
            .map_err(|_| tokens.error(beta_tok.0, format!("not a number: {:?}", beta_tok.1)))?;
        metric = metric
            .snowflake(beta)
            .map_err(|e| tokens.error(beta_tok.0, e.to_string()))?;
    }
    Ok(metric)
}

/// Like [`parse_metric`], but rejects snowflake suffixes.
pub fn parse_norm(spec: &str) -> Result<NormSpec> {
    match parse_metric(spec)? {
        Metric::NormInduced(n) => Ok(n),
        Metric::Snowflake { .. } => Err(CliError::Parse(format!(
            "metric {spec:?}: a norm is required here, snowflake suffixes are not allowed"
        ))),
    }
}

struct Tokens<'a> {
    src: &'a str,
    pos: usize,
    exhausted: bool,
}

impl<'a> Tokens<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src,
            pos: 0,
            exhausted: false,
        }
    }

    fn done(&self) -> bool {
        self.exhausted
    }

    // Returns (byte offset, token); a missing token is the empty string.
    fn next_token(&mut self) -> (usize, &'a str) {
        if self.exhausted {
            return (self.src.len(), "");
        }
        let start = self.pos;
        let rest = &self.src[start..];
        match rest.find(':') {
            Some(i) => {
                self.pos = start + i + 1;
                (start, &rest[..i])
            }
            None => {
                self.pos = self.src.len();
                self.exhausted = true;
                (start, rest)
            }
        }
    }

    fn error(&self, at: usize, msg: String) -> CliError {
        CliError::Parse(format!("metric {:?} at position {at}: {msg}", self.src))
    }
}
