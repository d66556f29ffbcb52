//! Sentence and word tokenization, and the document model everything
//! else consumes.
//!
//! The splitter is rule based and fully deterministic: a sentence ends at
//! `.`, `!` or `?` followed by whitespace, unless the token before the
//! terminator is a known abbreviation or a single capital letter (an
//! initial). End of text always closes the last sentence. Word tokens are
//! lowercased, split on whitespace, with leading/trailing punctuation
//! peeled off into tokens of their own.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from document construction and tokenization.
#[derive(Debug, Error)]
pub enum TextError {
    #[error("invalid document: {0}")]
    InvalidDocument(String),
    #[error("failed to read abbreviation file: {0}")]
    Io(#[from] std::io::Error),
}

/// Gold label attached to a document: either a 1-100 sentiment score or a
/// category name from a closed set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Score(u8),
    Category(String),
}

impl Label {
    pub fn score(value: u8) -> Result<Self, TextError> {
        if (1..=100).contains(&value) {
            Ok(Label::Score(value))
        } else {
            Err(TextError::InvalidDocument(format!(
                "score label {value} outside [1,100]"
            )))
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Score(s) => write!(f, "{s}"),
            Label::Category(c) => write!(f, "{c}"),
        }
    }
}

/// A labeled input document before tokenization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawDocument {
    pub id: String,
    pub text: String,
    pub label: Label,
}

impl RawDocument {
    pub fn new(
        id: impl Into<String>,
        text: impl Into<String>,
        label: Label,
    ) -> Result<Self, TextError> {
        let id = id.into();
        let text = text.into();
        if id.is_empty() {
            return Err(TextError::InvalidDocument("empty document id".into()));
        }
        if text.trim().is_empty() {
            return Err(TextError::InvalidDocument(format!(
                "document {id} has empty text"
            )));
        }
        if let Label::Score(s) = label {
            if !(1..=100).contains(&s) {
                return Err(TextError::InvalidDocument(format!(
                    "document {id}: score label {s} outside [1,100]"
                )));
            }
        }
        Ok(Self { id, text, label })
    }

    /// Tokenize with the default splitter.
    pub fn tokenize(&self) -> Result<TokenizedDocument, TextError> {
        self.tokenize_with(&SentenceSplitter::default())
    }

    pub fn tokenize_with(&self, splitter: &SentenceSplitter) -> Result<TokenizedDocument, TextError> {
        let sentences = splitter.split(&self.text)?;
        let word_token_count = sentences.iter().map(|s| s.tokens.len()).sum();
        Ok(TokenizedDocument {
            id: self.id.clone(),
            sentences,
            label: self.label.clone(),
            word_token_count,
        })
    }
}

/// One sentence of a document, with its 0-based position and word tokens.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sentence {
    pub index: usize,
    pub text: String,
    pub tokens: Vec<String>,
}

/// A document split into indexed sentences.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TokenizedDocument {
    pub id: String,
    pub sentences: Vec<Sentence>,
    pub label: Label,
    /// Total word tokens across all sentences.
    pub word_token_count: usize,
}

impl TokenizedDocument {
    /// Number of sentences (`M` in the ranking and selection code).
    pub fn sentence_count(&self) -> usize {
        self.sentences.len()
    }
}

/// The abbreviation list consulted by the sentence splitter.
///
/// File format: one lowercase abbreviation per line, UTF-8, `#` comments.
/// Trailing dots in entries are ignored, so "e.g." and "e.g" are the same.
#[derive(Debug, Clone)]
pub struct Abbreviations {
    entries: HashSet<String>,
}

/// Contents of the abbreviation list shipped with the crate.
pub const DEFAULT_ABBREVIATIONS: &str = include_str!("../data/abbreviations.txt");

impl Default for Abbreviations {
    fn default() -> Self {
        Self::parse(DEFAULT_ABBREVIATIONS)
    }
}

impl Abbreviations {
    pub fn parse(contents: &str) -> Self {
        let entries = contents
            .lines()
            .map(|line| line.split('#').next().unwrap_or("").trim())
            .filter(|line| !line.is_empty())
            .map(|line| line.trim_end_matches('.').to_lowercase())
            .collect();
        Self { entries }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, TextError> {
        Ok(Self::parse(&std::fs::read_to_string(path)?))
    }

    pub fn contains(&self, token: &str) -> bool {
        self.entries.contains(token.trim_end_matches('.'))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Rule-based sentence splitter with a configurable abbreviation list.
#[derive(Debug, Clone, Default)]
pub struct SentenceSplitter {
    abbreviations: Abbreviations,
}

impl SentenceSplitter {
    pub fn new(abbreviations: Abbreviations) -> Self {
        Self { abbreviations }
    }

    /// Split `text` into sentences in source order.
    ///
    /// Sentence texts are trimmed slices of the source, so joining them
    /// with single spaces reconstructs the input modulo collapsed
    /// whitespace. Whitespace-only input is rejected.
    pub fn split(&self, text: &str) -> Result<Vec<Sentence>, TextError> {
        if text.trim().is_empty() {
            return Err(TextError::InvalidDocument(
                "cannot split empty or whitespace-only text".into(),
            ));
        }

        let chars: Vec<char> = text.chars().collect();
        let mut sentences = Vec::new();
        let mut start = 0usize;

        for i in 0..chars.len() {
            let c = chars[i];
            if !matches!(c, '.' | '!' | '?') {
                continue;
            }
            let followed_by_space = chars.get(i + 1).is_some_and(|n| n.is_whitespace());
            if !followed_by_space {
                continue;
            }
            if c == '.' && self.suppresses_boundary(&chars[start..i]) {
                continue;
            }
            push_sentence(&mut sentences, &chars[start..=i]);
            start = i + 1;
        }
        // End of text always closes the last sentence.
        if start < chars.len() {
            push_sentence(&mut sentences, &chars[start..]);
        }

        if sentences.is_empty() {
            return Err(TextError::InvalidDocument(
                "text contains no sentences".into(),
            ));
        }
        Ok(sentences)
    }

    /// Does the token ending at a `.` suppress the boundary?
    ///
    /// The token is the run of alphanumerics and internal dots immediately
    /// before the terminator. It suppresses when it is a listed
    /// abbreviation or when its final letter group is a single capital
    /// (an initial, as in "J. Smith" or "U.S.").
    fn suppresses_boundary(&self, before: &[char]) -> bool {
        let mut token_start = before.len();
        while token_start > 0 {
            let c = before[token_start - 1];
            if c.is_alphanumeric() || c == '.' {
                token_start -= 1;
            } else {
                break;
            }
        }
        let token: String = before[token_start..].iter().collect();
        let token = token.trim_start_matches('.');
        if token.is_empty() {
            return false;
        }
        if self.abbreviations.contains(&token.to_lowercase()) {
            return true;
        }
        let last_segment: Vec<char> = token
            .rsplit('.')
            .next()
            .unwrap_or("")
            .chars()
            .collect();
        last_segment.len() == 1 && last_segment[0].is_uppercase()
    }
}

fn push_sentence(sentences: &mut Vec<Sentence>, span: &[char]) {
    let text: String = span.iter().collect();
    let text = text.trim();
    if text.is_empty() {
        return;
    }
    sentences.push(Sentence {
        index: sentences.len(),
        text: text.to_string(),
        tokens: tokenize_words(text),
    });
}

/// Split `text` into sentences with the default abbreviation list.
pub fn split_sentences(text: &str) -> Result<Vec<Sentence>, TextError> {
    SentenceSplitter::default().split(text)
}

/// Lowercase word tokenization.
///
/// Pieces are separated on Unicode whitespace; leading and trailing
/// punctuation runs are peeled off each piece and kept as tokens of their
/// own, so `"Hello, world!"` becomes `["hello", ",", "world", "!"]`.
/// Interior punctuation stays attached (`"don't"`, `"e.g"`).
pub fn tokenize_words(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for piece in text.to_lowercase().split_whitespace() {
        let chars: Vec<char> = piece.chars().collect();
        let mut head = 0;
        while head < chars.len() && !chars[head].is_alphanumeric() {
            head += 1;
        }
        if head == chars.len() {
            // The whole piece is one punctuation run.
            tokens.push(piece.to_string());
            continue;
        }
        let mut tail = chars.len();
        while tail > head && !chars[tail - 1].is_alphanumeric() {
            tail -= 1;
        }
        if head > 0 {
            tokens.push(chars[..head].iter().collect());
        }
        tokens.push(chars[head..tail].iter().collect());
        if tail < chars.len() {
            tokens.push(chars[tail..].iter().collect());
        }
    }
    tokens
}

/// Number of word tokens in `text`.
pub fn count_tokens(text: &str) -> usize {
    tokenize_words(text).len()
}

/// True for tokens that carry content (at least one alphanumeric char).
/// Pure punctuation runs are counted as tokens but excluded from TF-IDF
/// and overlap vocabularies.
pub fn is_word_token(token: &str) -> bool {
    token.chars().any(char::is_alphanumeric)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(sentences: &[Sentence]) -> Vec<&str> {
        sentences.iter().map(|s| s.text.as_str()).collect()
    }

    #[test]
    fn splits_on_terminal_periods() {
        let s = split_sentences("Good game. Bad port.").unwrap();
        assert_eq!(texts(&s), ["Good game.", "Bad port."]);
    }

    #[test]
    fn end_of_text_closes_without_terminator() {
        let s = split_sentences("It works").unwrap();
        assert_eq!(texts(&s), ["It works"]);
    }

    #[test]
    fn abbreviation_suppresses_boundary() {
        let s = split_sentences("Dr. Smith left. He ran.").unwrap();
        assert_eq!(texts(&s), ["Dr. Smith left.", "He ran."]);
    }

    #[test]
    fn single_capital_initial_suppresses_boundary() {
        let s = split_sentences("J. K. Rowling wrote it. It sold.").unwrap();
        assert_eq!(texts(&s), ["J. K. Rowling wrote it.", "It sold."]);
    }

    #[test]
    fn exclamation_and_question_terminate() {
        let s = split_sentences("Wow! Really? Yes.").unwrap();
        assert_eq!(texts(&s), ["Wow!", "Really?", "Yes."]);
    }

    #[test]
    fn indices_are_contiguous() {
        let s = split_sentences("One. Two. Three.").unwrap();
        let idx: Vec<usize> = s.iter().map(|x| x.index).collect();
        assert_eq!(idx, [0, 1, 2]);
    }

    #[test]
    fn empty_text_is_invalid() {
        assert!(split_sentences("").is_err());
        assert!(split_sentences("   \n\t").is_err());
    }

    #[test]
    fn trailing_whitespace_does_not_create_empty_sentence() {
        let s = split_sentences("Done.   ").unwrap();
        assert_eq!(texts(&s), ["Done."]);
    }

    #[test]
    fn tokenizes_punctuation_separately() {
        assert_eq!(tokenize_words("Hello, world!"), ["hello", ",", "world", "!"]);
    }

    #[test]
    fn tokenize_empty_is_empty() {
        assert!(tokenize_words("").is_empty());
    }

    #[test]
    fn tokenize_collapses_whitespace_and_lowercases() {
        assert_eq!(tokenize_words("A  B\tC"), ["a", "b", "c"]);
    }

    #[test]
    fn interior_punctuation_stays_attached() {
        assert_eq!(tokenize_words("don't stop"), ["don't", "stop"]);
        assert_eq!(tokenize_words("(e.g. this)"), ["(", "e.g", ".", "this", ")"]);
    }

    #[test]
    fn count_tokens_matches_tokenizer() {
        assert_eq!(count_tokens("Hello, world!"), 4);
        assert_eq!(count_tokens(""), 0);
    }

    #[test]
    fn word_token_count_sums_sentences() {
        let doc = RawDocument::new("d1", "Good game. Bad port.", Label::Score(80))
            .unwrap()
            .tokenize()
            .unwrap();
        assert_eq!(doc.sentence_count(), 2);
        let per_sentence: usize = doc.sentences.iter().map(|s| s.tokens.len()).sum();
        assert_eq!(doc.word_token_count, per_sentence);
        assert_eq!(doc.word_token_count, 6);
    }

    #[test]
    fn score_label_validated() {
        assert!(RawDocument::new("d", "Text here.", Label::Score(0)).is_err());
        assert!(RawDocument::new("d", "Text here.", Label::Score(101)).is_err());
        assert!(RawDocument::new("d", "Text here.", Label::Score(100)).is_ok());
    }

    #[test]
    fn abbreviation_file_parses_comments() {
        let abbr = Abbreviations::parse("# header\nmr\n e.g. # inline\n\n");
        assert!(abbr.contains("mr"));
        assert!(abbr.contains("e.g"));
        assert!(abbr.contains("e.g."));
        assert!(!abbr.contains("header"));
        assert_eq!(abbr.len(), 2);
    }

    #[test]
    fn is_word_token_excludes_pure_punctuation() {
        assert!(is_word_token("hello"));
        assert!(is_word_token("e.g"));
        assert!(is_word_token("3"));
        assert!(!is_word_token(","));
        assert!(!is_word_token("!!!"));
    }
}
