//! TF-IDF sentence embeddings, cosine similarity, and the dissimilarity
//! matrix driving diversity selection and cohesion scoring.
//!
//! Sentences play the role of documents: `tf(t, s)` is the raw count of
//! term `t` in sentence `s`, `idf(t) = ln((1 + M) / (1 + df(t))) + 1`
//! (smoothed), and every row is L2-normalized. Pure punctuation tokens
//! never enter the vocabulary.

use std::collections::{HashMap, HashSet};
use std::path::Path;

use thiserror::Error;

use crate::text::{is_word_token, Sentence};

#[derive(Debug, Error)]
pub enum VectorizeError {
    #[error("model mismatch: vector dimensions {left} and {right} differ")]
    ModelMismatch { left: usize, right: usize },
    #[error("failed to read stopword file: {0}")]
    Io(#[from] std::io::Error),
}

/// Optional stopword list, one lowercase word per line, UTF-8.
#[derive(Debug, Clone, Default)]
pub struct Stopwords {
    words: HashSet<String>,
}

impl Stopwords {
    pub fn parse(contents: &str) -> Self {
        let words = contents
            .lines()
            .map(str::trim)
            .filter(|line| !line.is_empty() && !line.starts_with('#'))
            .map(|line| line.to_lowercase())
            .collect();
        Self { words }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, VectorizeError> {
        Ok(Self::parse(&std::fs::read_to_string(path)?))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Knobs for [`TfidfModel::fit_with`]. The default removes nothing.
#[derive(Debug, Clone, Default)]
pub struct TfidfOptions {
    pub stopwords: Option<Stopwords>,
}

/// A sparse non-negative weight vector with an explicit dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector {
    dim: usize,
    /// (column, weight) pairs sorted by column, weights > 0.
    entries: Vec<(usize, f64)>,
}

impl SparseVector {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn l2_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|(_, w)| w * w)
            .sum::<f64>()
            .sqrt()
    }

    pub fn dot(&self, other: &SparseVector) -> f64 {
        let mut sum = 0.0;
        let mut a = self.entries.iter().peekable();
        let mut b = other.entries.iter().peekable();
        while let (Some((ia, wa)), Some((ib, wb))) = (a.peek(), b.peek()) {
            match ia.cmp(ib) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => {
                    sum += wa * wb;
                    a.next();
                    b.next();
                }
            }
        }
        sum
    }
}

/// Cosine of the angle between two weight vectors, in [0, 1].
///
/// A zero vector is defined to have similarity 0 with everything: a
/// sentence with no vocabulary terms carries no content to be similar
/// with.
pub fn cosine_similarity(u: &SparseVector, v: &SparseVector) -> Result<f64, VectorizeError> {
    if u.dim != v.dim {
        return Err(VectorizeError::ModelMismatch {
            left: u.dim,
            right: v.dim,
        });
    }
    let nu = u.l2_norm();
    let nv = v.l2_norm();
    if nu == 0.0 || nv == 0.0 {
        return Ok(0.0);
    }
    Ok((u.dot(v) / (nu * nv)).clamp(0.0, 1.0))
}

/// Sentence-by-term TF-IDF weight matrix with vocabulary and IDF vector.
#[derive(Debug, Clone)]
pub struct TfidfModel {
    terms: Vec<String>,
    vocabulary: HashMap<String, usize>,
    idf: Vec<f64>,
    rows: Vec<SparseVector>,
}

impl TfidfModel {
    /// Fit on sentences with default options (no stopword removal).
    pub fn fit(sentences: &[Sentence]) -> Self {
        Self::fit_with(sentences, &TfidfOptions::default())
    }

    pub fn fit_with(sentences: &[Sentence], options: &TfidfOptions) -> Self {
        let token_lists: Vec<&[String]> = sentences.iter().map(|s| s.tokens.as_slice()).collect();
        Self::fit_token_lists(&token_lists, options)
    }

    /// Fit on pre-tokenized pseudo-documents. Used directly by cohesion
    /// scoring, where the "documents" are multi-sentence segments.
    pub fn fit_token_lists(token_lists: &[&[String]], options: &TfidfOptions) -> Self {
        let m = token_lists.len();
        let keep = |token: &str| {
            is_word_token(token)
                && options
                    .stopwords
                    .as_ref()
                    .map_or(true, |sw| !sw.contains(token))
        };

        // Vocabulary in first-occurrence order keeps the model independent
        // of hash iteration order.
        let mut terms: Vec<String> = Vec::new();
        let mut vocabulary: HashMap<String, usize> = HashMap::new();
        let mut df: Vec<usize> = Vec::new();
        for tokens in token_lists {
            let mut seen: HashSet<usize> = HashSet::new();
            for token in tokens.iter().filter(|t| keep(t)) {
                let col = *vocabulary.entry(token.clone()).or_insert_with(|| {
                    terms.push(token.clone());
                    df.push(0);
                    terms.len() - 1
                });
                if seen.insert(col) {
                    df[col] += 1;
                }
            }
        }

        let idf: Vec<f64> = df
            .iter()
            .map(|&d| ((1.0 + m as f64) / (1.0 + d as f64)).ln() + 1.0)
            .collect();

        let dim = terms.len();
        let rows = token_lists
            .iter()
            .map(|tokens| {
                let mut counts: HashMap<usize, f64> = HashMap::new();
                for token in tokens.iter().filter(|t| keep(t)) {
                    *counts.entry(vocabulary[token.as_str()]).or_insert(0.0) += 1.0;
                }
                let mut entries: Vec<(usize, f64)> = counts
                    .into_iter()
                    .map(|(col, tf)| (col, tf * idf[col]))
                    .collect();
                entries.sort_by_key(|(col, _)| *col);
                let norm = entries.iter().map(|(_, w)| w * w).sum::<f64>().sqrt();
                if norm > 0.0 {
                    for (_, w) in &mut entries {
                        *w /= norm;
                    }
                }
                SparseVector { dim, entries }
            })
            .collect();

        Self {
            terms,
            vocabulary,
            idf,
            rows,
        }
    }

    /// Number of rows (sentences).
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn vocab_size(&self) -> usize {
        self.terms.len()
    }

    pub fn row(&self, i: usize) -> &SparseVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseVector] {
        &self.rows
    }

    pub fn term_index(&self, term: &str) -> Option<usize> {
        self.vocabulary.get(term).copied()
    }

    pub fn term(&self, col: usize) -> &str {
        &self.terms[col]
    }

    pub fn idf(&self, col: usize) -> f64 {
        self.idf[col]
    }

    /// Dense weight of `term` in row `i` (0 when absent).
    pub fn weight(&self, i: usize, term: &str) -> f64 {
        let Some(col) = self.term_index(term) else {
            return 0.0;
        };
        self.rows[i]
            .entries
            .iter()
            .find(|(c, _)| *c == col)
            .map_or(0.0, |(_, w)| *w)
    }
}

/// Fit a TF-IDF model with default options.
pub fn fit_tfidf(sentences: &[Sentence]) -> TfidfModel {
    TfidfModel::fit(sentences)
}

/// Symmetric M x M matrix of pairwise dissimilarities in [0, 1], with a
/// zero diagonal: `D[i][j] = 1 - cos(row_i, row_j)` for `i != j`.
#[derive(Debug, Clone, PartialEq)]
pub struct DissimilarityMatrix {
    m: usize,
    values: Vec<f64>,
}

impl DissimilarityMatrix {
    pub fn size(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.m + j]
    }

    /// Per-row sums: the diversity score of each sentence against all
    /// others.
    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.m)
            .map(|i| (0..self.m).map(|j| self.get(i, j)).sum())
            .collect()
    }
}

/// Pairwise dissimilarity of the model's rows.
pub fn dissimilarity_matrix(model: &TfidfModel) -> DissimilarityMatrix {
    let m = model.row_count();
    let mut values = vec![0.0; m * m];
    for i in 0..m {
        for j in (i + 1)..m {
            // Rows come from one model, so dimensions always agree.
            let cos = cosine_similarity(model.row(i), model.row(j)).expect("same model");
            let d = (1.0 - cos).clamp(0.0, 1.0);
            values[i * m + j] = d;
            values[j * m + i] = d;
        }
    }
    DissimilarityMatrix { m, values }
}
