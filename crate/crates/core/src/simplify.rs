//! Rule-based Turkish text simplification.
//!
//! A line is simplified in four steps: whitespace tokenization with
//! punctuation trimmed from token edges, Turkish case folding, stopword
//! elimination (bigrams before unigrams), and iterative suffix stripping.
//! The stopword lexicon and the suffix inventory ship as plain text files
//! and can be swapped out at runtime.
//!
//! All operations are pure functions over an immutable [`SimplifierConfig`],
//! so they can be called from any number of concurrent tasks.

use std::borrow::Cow;
use std::collections::HashSet;
use std::fs;
use std::path::Path;

use thiserror::Error;

/// Shipped stopword lexicon.
pub const DEFAULT_STOPWORDS: &str = include_str!("../data/stopwords_tr.txt");
/// Shipped suffix-strip rules.
pub const DEFAULT_SUFFIXES: &str = include_str!("../data/suffixes_tr.tsv");

const DEFAULT_MAX_STRIP_PASSES: usize = 3;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{file}:{line}: {msg}")]
    Invalid {
        file: String,
        line: usize,
        msg: String,
    },
    #[error("failed to read {path}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// A word as it appeared in the input plus its normalized form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    /// The raw whitespace-delimited word.
    pub surface: String,
    /// Turkish-lowercased, with punctuation trimmed from both edges.
    /// Non-empty for every emitted token.
    pub normalized: String,
}

/// One suffix-strip rule: the suffix fires only when at least
/// `min_stem_chars` characters would remain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixRule {
    pub suffix: String,
    pub min_stem_chars: usize,
}

impl SuffixRule {
    pub fn new(suffix: impl Into<String>, min_stem_chars: usize) -> Result<Self, ConfigError> {
        let suffix = suffix.into();
        if suffix.is_empty() {
            return Err(invalid("<rule>", 0, "suffix must be non-empty"));
        }
        if min_stem_chars < 2 {
            return Err(invalid("<rule>", 0, "min_stem_chars must be at least 2"));
        }
        Ok(Self {
            suffix,
            min_stem_chars,
        })
    }

    fn char_len(&self) -> usize {
        self.suffix.chars().count()
    }
}

/// Stopword sets: single words plus two-word bigrams such as "ya da".
/// All entries are stored Turkish-lowercased.
#[derive(Debug, Clone, Default)]
pub struct StopwordLexicon {
    unigrams: HashSet<String>,
    bigrams: HashSet<(String, String)>,
}

impl StopwordLexicon {
    /// Parses the stopword file format: one entry per line, a line with a
    /// space is a bigram, `#` begins a comment.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        Self::parse_named(text, "<stopwords>")
    }

    fn parse_named(text: &str, file: &str) -> Result<Self, ConfigError> {
        let mut lexicon = Self::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                [w] => {
                    lexicon.unigrams.insert(turkish_lowercase(w));
                }
                [a, b] => {
                    lexicon
                        .bigrams
                        .insert((turkish_lowercase(a), turkish_lowercase(b)));
                }
                _ => {
                    return Err(invalid(
                        file,
                        no + 1,
                        "an entry is a single word or a two-word bigram",
                    ))
                }
            }
        }
        Ok(lexicon)
    }

    pub fn contains_unigram(&self, word: &str) -> bool {
        self.unigrams.contains(word)
    }

    pub fn contains_bigram(&self, first: &str, second: &str) -> bool {
        // Tuple lookup without allocating: the set is small, scan is fine
        // for the bigram counts seen in practice (a handful of entries).
        self.bigrams.iter().any(|(a, b)| a == first && b == second)
    }

    pub fn unigram_count(&self) -> usize {
        self.unigrams.len()
    }

    pub fn bigram_count(&self) -> usize {
        self.bigrams.len()
    }
}

/// Immutable simplifier configuration: lexicon, ordered rules, pass budget.
#[derive(Debug, Clone)]
pub struct SimplifierConfig {
    lexicon: StopwordLexicon,
    /// Sorted by descending suffix length (ties broken lexicographically),
    /// so the first match is always the longest.
    rules: Vec<SuffixRule>,
    max_strip_passes: usize,
}

impl SimplifierConfig {
    pub fn new(
        lexicon: StopwordLexicon,
        mut rules: Vec<SuffixRule>,
        max_strip_passes: usize,
    ) -> Result<Self, ConfigError> {
        if max_strip_passes < 1 {
            return Err(invalid(
                "<config>",
                0,
                "max_strip_passes must be at least 1",
            ));
        }
        for rule in &rules {
            if rule.suffix.is_empty() || rule.min_stem_chars < 2 {
                return Err(invalid("<config>", 0, "invalid suffix rule"));
            }
        }
        rules.sort_by(|a, b| {
            b.char_len()
                .cmp(&a.char_len())
                .then_with(|| a.suffix.cmp(&b.suffix))
        });
        Ok(Self {
            lexicon,
            rules,
            max_strip_passes,
        })
    }

    /// The configuration built from the shipped stopword and suffix files.
    pub fn shipped() -> Self {
        let lexicon = StopwordLexicon::parse_named(DEFAULT_STOPWORDS, "stopwords_tr.txt")
            .expect("shipped stopword file parses");
        let rules = parse_suffix_rules(DEFAULT_SUFFIXES).expect("shipped suffix file parses");
        Self::new(lexicon, rules, DEFAULT_MAX_STRIP_PASSES).expect("shipped configuration is valid")
    }

    /// Builds a configuration from override files; `None` keeps the shipped
    /// data for that side.
    pub fn from_files(
        stopwords: Option<&Path>,
        suffixes: Option<&Path>,
    ) -> Result<Self, ConfigError> {
        let lexicon = match stopwords {
            Some(path) => StopwordLexicon::parse_named(&read(path)?, &path.display().to_string())?,
            None => StopwordLexicon::parse_named(DEFAULT_STOPWORDS, "stopwords_tr.txt")?,
        };
        let rules = match suffixes {
            Some(path) => parse_suffix_rules_named(&read(path)?, &path.display().to_string())?,
            None => parse_suffix_rules(DEFAULT_SUFFIXES)?,
        };
        Self::new(lexicon, rules, DEFAULT_MAX_STRIP_PASSES)
    }

    pub fn with_max_strip_passes(mut self, passes: usize) -> Result<Self, ConfigError> {
        if passes < 1 {
            return Err(invalid(
                "<config>",
                0,
                "max_strip_passes must be at least 1",
            ));
        }
        self.max_strip_passes = passes;
        Ok(self)
    }

    pub fn lexicon(&self) -> &StopwordLexicon {
        &self.lexicon
    }

    /// Rules in application order (longest suffix first).
    pub fn rules(&self) -> &[SuffixRule] {
        &self.rules
    }

    pub fn max_strip_passes(&self) -> usize {
        self.max_strip_passes
    }

    /// Smallest `min_stem_chars` over all rules; stripping never produces
    /// a stem shorter than this.
    pub fn min_stem_floor(&self) -> usize {
        self.rules
            .iter()
            .map(|r| r.min_stem_chars)
            .min()
            .unwrap_or(2)
    }
}

fn read(path: &Path) -> Result<String, ConfigError> {
    fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn invalid(file: &str, line: usize, msg: &str) -> ConfigError {
    ConfigError::Invalid {
        file: file.to_string(),
        line,
        msg: msg.to_string(),
    }
}

/// Parses the suffix rule file format: `suffix<TAB>min_stem_chars`, one
/// rule per line, `#` begins a comment. File order is irrelevant.
pub fn parse_suffix_rules(text: &str) -> Result<Vec<SuffixRule>, ConfigError> {
    parse_suffix_rules_named(text, "<suffixes>")
}

fn parse_suffix_rules_named(text: &str, file: &str) -> Result<Vec<SuffixRule>, ConfigError> {
    let mut rules = Vec::new();
    let mut seen = HashSet::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim_end();
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let (suffix, min) = line
            .split_once('\t')
            .ok_or_else(|| invalid(file, no + 1, "expected suffix<TAB>min_stem_chars"))?;
        let suffix = turkish_lowercase(suffix.trim());
        if suffix.is_empty() {
            return Err(invalid(file, no + 1, "suffix must be non-empty"));
        }
        let min_stem_chars: usize = min
            .trim()
            .parse()
            .map_err(|_| invalid(file, no + 1, "min_stem_chars must be an integer"))?;
        if min_stem_chars < 2 {
            return Err(invalid(file, no + 1, "min_stem_chars must be at least 2"));
        }
        if !seen.insert(suffix.clone()) {
            return Err(invalid(file, no + 1, "duplicate suffix"));
        }
        rules.push(SuffixRule {
            suffix,
            min_stem_chars,
        });
    }
    Ok(rules)
}

/// Lowercases with Turkish casing rules: 'I' maps to dotless 'ı' and 'İ'
/// maps to dotted 'i'; everything else takes the standard lowercase.
pub fn turkish_lowercase(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            'I' => out.push('ı'),
            'İ' => out.push('i'),
            _ => out.extend(ch.to_lowercase()),
        }
    }
    out
}

/// Splits a line on whitespace and trims punctuation from token edges.
/// Interior punctuation is kept ("a...b" stays one token); tokens that
/// trim away to nothing are dropped. Order is preserved.
pub fn tokenize(line: &str) -> Vec<Token> {
    line.split_whitespace()
        .filter_map(|raw| {
            let trimmed = raw.trim_matches(|c: char| !c.is_alphanumeric());
            if trimmed.is_empty() {
                None
            } else {
                Some(Token {
                    surface: raw.to_string(),
                    normalized: turkish_lowercase(trimmed),
                })
            }
        })
        .collect()
}

/// Strips inflectional suffixes from an already-normalized word.
///
/// Per pass the longest rule whose removal leaves at least
/// `min_stem_chars` characters fires; at most `max_strip_passes` passes
/// run. A rule never fires when the remaining stem would end in a
/// non-alphanumeric character, so stripping cannot expose trailing
/// punctuation that a second tokenization pass would then remove.
pub fn stem(word: &str, config: &SimplifierConfig) -> String {
    stem_slice(word, config).to_string()
}

/// The stem is always a prefix of the word, so it can be handed out as a
/// borrowed slice on hot paths.
fn stem_slice<'a>(word: &'a str, config: &SimplifierConfig) -> &'a str {
    let mut current = word;
    for _ in 0..config.max_strip_passes {
        match strip_once(current, &config.rules) {
            Some(rest) => current = rest,
            None => break,
        }
    }
    current
}

fn strip_once<'a>(word: &'a str, rules: &[SuffixRule]) -> Option<&'a str> {
    let word_chars = word.chars().count();
    for rule in rules {
        if let Some(rest) = word.strip_suffix(rule.suffix.as_str()) {
            let stem_chars = word_chars - rule.char_len();
            if stem_chars >= rule.min_stem_chars
                && rest.chars().last().is_some_and(|c| c.is_alphanumeric())
            {
                return Some(rest);
            }
        }
    }
    None
}

/// Normalized form of one raw token, borrowing when the trimmed token is
/// already lowercase.
fn normalize_token(raw: &str) -> Option<Cow<'_, str>> {
    let trimmed = raw.trim_matches(|c: char| !c.is_alphanumeric());
    if trimmed.is_empty() {
        return None;
    }
    if trimmed
        .chars()
        .any(|c| c == 'I' || c == 'İ' || c.is_uppercase())
    {
        Some(Cow::Owned(turkish_lowercase(trimmed)))
    } else {
        Some(Cow::Borrowed(trimmed))
    }
}

/// Simplifies one line: tokenize, drop stopword bigrams (leftmost first,
/// non-overlapping) then unigrams, stem the survivors, join with single
/// spaces. Output tokens are normalized forms; surface casing is gone.
pub fn simplify_line(line: &str, config: &SimplifierConfig) -> String {
    let tokens: Vec<Cow<'_, str>> = line
        .split_whitespace()
        .filter_map(normalize_token)
        .collect();

    let mut kept: Vec<&str> = Vec::with_capacity(tokens.len());
    let mut i = 0;
    while i < tokens.len() {
        if i + 1 < tokens.len() && config.lexicon.contains_bigram(&tokens[i], &tokens[i + 1]) {
            i += 2;
            continue;
        }
        kept.push(tokens[i].as_ref());
        i += 1;
    }

    let mut out = String::with_capacity(line.len());
    for token in kept {
        if config.lexicon.contains_unigram(token) {
            continue;
        }
        let stemmed = stem_slice(token, config);
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(stemmed);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Input sentence of the shipped sample pair.
    pub(crate) const SAMPLE_SENTENCE: &str = "Feshe itiraz davası, işverence geçerli sebep \
         gösterilmeden ya da kanunda öngörülen usule uyulmadan yapılan fesihlere karşı \
         işçilerin başvurabileceği bir itiraz yolu olarak karşımıza çıkmaktadır.";

    /// The unambiguous stem pairs evidenced by the sample output row.
    pub(crate) const SAMPLE_STEM_PAIRS: [(&str, &str); 8] = [
        ("davası", "dava"),
        ("işverence", "işveren"),
        ("kanunda", "kanun"),
        ("öngörülen", "öngör"),
        ("usule", "usul"),
        ("fesihlere", "fesih"),
        ("işçilerin", "işçi"),
        ("yolu", "yol"),
    ];

    fn shipped() -> SimplifierConfig {
        SimplifierConfig::shipped()
    }

    #[test]
    fn lowercase_turkish_dotless_i() {
        assert_eq!(turkish_lowercase("I"), "ı");
    }

    #[test]
    fn lowercase_turkish_dotted_i() {
        assert_eq!(turkish_lowercase("İtiraz"), "itiraz");
    }

    #[test]
    fn lowercase_ascii() {
        assert_eq!(turkish_lowercase("FESHE"), "feshe");
    }

    #[test]
    fn lowercase_other_turkish_letters() {
        assert_eq!(turkish_lowercase("ÇĞÖŞÜ"), "çğöşü");
    }

    #[test]
    fn tokenize_empty_line() {
        assert!(tokenize("").is_empty());
    }

    #[test]
    fn tokenize_strips_edge_punctuation() {
        let tokens = tokenize("Feshe itiraz davası,");
        let normalized: Vec<&str> = tokens.iter().map(|t| t.normalized.as_str()).collect();
        assert_eq!(normalized, ["feshe", "itiraz", "davası"]);
        assert_eq!(tokens[2].surface, "davası,");
    }

    #[test]
    fn tokenize_keeps_interior_punctuation() {
        let tokens = tokenize("a...b  c");
        let normalized: Vec<&str> = tokens.iter().map(|t| t.normalized.as_str()).collect();
        assert_eq!(normalized, ["a...b", "c"]);
    }

    // Hand-built expectation table for the edge-trim contract; each case
    // was worked out on paper against the character classes involved.
    #[test]
    fn tokenize_edge_trim_table() {
        let table: &[(&str, &[&str])] = &[
            ("(kanunda).", &["kanunda"]),
            ("...", &[]),
            ("-- x --", &["x"]),
            ("4857 sayılı!", &["4857", "sayılı"]),
            ("\"ya da\"", &["ya", "da"]),
            ("soru? cevap!", &["soru", "cevap"]),
            ("m.18/1-a", &["m.18/1-a"]),
        ];
        for (line, want) in table {
            let got: Vec<String> = tokenize(line).into_iter().map(|t| t.normalized).collect();
            assert_eq!(got, *want, "line {line:?}");
        }
    }

    #[test]
    fn stem_sample_pairs_hold_exactly() {
        let config = shipped();
        for (word, want) in SAMPLE_STEM_PAIRS {
            assert_eq!(stem(word, &config), want, "stem({word:?})");
        }
    }

    #[test]
    fn stem_respects_min_stem_guard() {
        let lexicon = StopwordLexicon::default();
        let rules = vec![SuffixRule::new("b", 2).unwrap()];
        let config = SimplifierConfig::new(lexicon, rules, 3).unwrap();
        assert_eq!(stem("ab", &config), "ab");
        assert_eq!(stem("aab", &config), "aa");
    }

    #[test]
    fn stem_unmatched_word_is_unchanged() {
        let config = shipped();
        assert_eq!(stem("sebep", &config), "sebep");
        assert_eq!(stem("gösterilmeden", &config), "gösterilmeden");
    }

    #[test]
    fn stem_honors_pass_budget() {
        let lexicon = StopwordLexicon::default();
        let rules = vec![SuffixRule::new("x", 2).unwrap()];
        let config = SimplifierConfig::new(lexicon, rules, 2).unwrap();
        assert_eq!(stem("aaxxxx", &config), "aaxx");
    }

    #[test]
    fn stem_never_exposes_trailing_punctuation() {
        let lexicon = StopwordLexicon::default();
        let rules = vec![SuffixRule::new("de", 3).unwrap()];
        let config = SimplifierConfig::new(lexicon, rules, 3).unwrap();
        // "a.." would remain; the guard refuses the strip.
        assert_eq!(stem("a..de", &config), "a..de");
    }

    #[test]
    fn stem_uses_longest_matching_rule() {
        let config = shipped();
        // "ülen" must win over "e"/"en"-like shorter candidates.
        assert_eq!(stem("öngörülen", &config), "öngör");
        assert_eq!(stem("başvurabileceği", &config), "başvur");
        assert_eq!(stem("çıkmaktadır", &config), "çık");
    }

    #[test]
    fn simplify_empty_line() {
        assert_eq!(simplify_line("", &shipped()), "");
    }

    #[test]
    fn simplify_drops_bigram_then_stems() {
        assert_eq!(simplify_line("ya da kanunda", &shipped()), "kanun");
    }

    #[test]
    fn simplify_bigram_matching_is_leftmost_nonoverlapping() {
        let mut lexicon = StopwordLexicon::default();
        lexicon.unigrams.clear();
        lexicon.bigrams.insert(("ya".to_string(), "da".to_string()));
        let config = SimplifierConfig::new(lexicon, Vec::new(), 3).unwrap();
        // [ya da da] -> first pair removed, lone "da" survives.
        assert_eq!(simplify_line("ya da da kanunda", &config), "da kanunda");
    }

    #[test]
    fn simplify_sample_sentence_keeps_stems_in_order() {
        let config = shipped();
        let output = simplify_line(SAMPLE_SENTENCE, &config);
        let tokens: Vec<&str> = output.split_whitespace().collect();
        assert!(!tokens.contains(&"ya"), "output: {output}");
        assert!(!tokens.contains(&"da"), "output: {output}");
        assert!(!tokens.contains(&"bir"), "output: {output}");
        let mut cursor = 0;
        for (_, want) in SAMPLE_STEM_PAIRS {
            let pos = tokens[cursor..]
                .iter()
                .position(|t| *t == want)
                .unwrap_or_else(|| panic!("stem {want:?} missing or out of order in {output:?}"));
            cursor += pos + 1;
        }
    }

    #[test]
    fn simplify_passes_numbers_through() {
        assert_eq!(simplify_line("4857 12", &shipped()), "4857 12");
    }

    #[test]
    fn simplify_punctuation_only_line_is_empty() {
        assert_eq!(simplify_line("... -- !!", &shipped()), "");
    }

    #[test]
    fn shipped_wordlist_simplifies_idempotently() {
        let config = shipped();
        for word in crate::bench::default_wordlist() {
            let once = simplify_line(&word, &config);
            let twice = simplify_line(&once, &config);
            assert_eq!(once, twice, "word {word:?}");
        }
    }

    #[test]
    fn simplify_is_idempotent_on_randomized_lines() {
        let config = shipped();
        let words = crate::bench::default_wordlist();
        let mut rng = crate::bench::SplitMix64::new(0x513dea1);
        let punct = ["", ",", ".", "!", "(", ")", "\"", "..."];
        for _ in 0..500 {
            let mut line = String::new();
            let token_count = rng.next_range(12);
            for _ in 0..token_count {
                if !line.is_empty() {
                    line.push(' ');
                }
                match rng.next_range(10) {
                    // word list entries, sometimes decorated or upcased
                    0..=6 => {
                        let word = &words[rng.next_range(words.len())];
                        line.push_str(punct[rng.next_range(punct.len())]);
                        if rng.next_range(4) == 0 {
                            line.push_str(&word.to_uppercase());
                        } else {
                            line.push_str(word);
                        }
                        line.push_str(punct[rng.next_range(punct.len())]);
                    }
                    // short random ASCII tokens
                    7..=8 => {
                        let len = 1 + rng.next_range(8);
                        for _ in 0..len {
                            let c = b'a' + (rng.next_range(26) as u8);
                            line.push(c as char);
                        }
                    }
                    // numbers
                    _ => {
                        line.push_str(&rng.next_range(100_000).to_string());
                    }
                }
            }
            let once = simplify_line(&line, &config);
            let twice = simplify_line(&once, &config);
            assert_eq!(once, twice, "line {line:?}");
        }
    }

    #[test]
    fn simplify_preserves_token_order() {
        let config = shipped();
        let line = "mahkeme kararı işçilerin davası";
        let output = simplify_line(line, &config);
        let out_tokens: Vec<&str> = output.split_whitespace().collect();
        // Survivors must appear in input order; spot-check the stems.
        assert_eq!(out_tokens, ["mahkem", "karar", "işçi", "dava"]);
    }

    #[test]
    fn no_stopword_survives_simplification() {
        let config = shipped();
        let words = crate::bench::default_wordlist();
        let mut rng = crate::bench::SplitMix64::new(0xb1_6a_77);
        for _ in 0..200 {
            let mut line = String::new();
            for _ in 0..(1 + rng.next_range(20)) {
                if !line.is_empty() {
                    line.push(' ');
                }
                line.push_str(&words[rng.next_range(words.len())]);
            }
            for token in simplify_line(&line, &config).split_whitespace() {
                assert!(
                    !config.lexicon().contains_unigram(token),
                    "stopword {token:?} survived in {line:?}"
                );
            }
        }
    }

    #[test]
    fn stemmed_tokens_respect_stem_length_floor() {
        let config = shipped();
        let floor = config.min_stem_floor();
        let words = crate::bench::default_wordlist();
        for word in &words {
            let stemmed = stem(word, &config);
            assert!(
                stemmed.chars().count() >= floor || stemmed == *word,
                "stem({word:?}) = {stemmed:?} shorter than floor {floor}"
            );
        }
    }

    #[test]
    fn simplify_is_a_pure_function() {
        let config = shipped();
        let line = "İşçilerin davası, ya da kanunda öngörülen usule";
        assert_eq!(simplify_line(line, &config), simplify_line(line, &config));
    }

    #[test]
    fn lexicon_parses_comments_bigrams_and_case() {
        let lexicon = StopwordLexicon::parse("# comment\nVE\nya da\n\n  bir  \n").unwrap();
        assert!(lexicon.contains_unigram("ve"));
        assert!(lexicon.contains_unigram("bir"));
        assert!(lexicon.contains_bigram("ya", "da"));
        assert_eq!(lexicon.unigram_count(), 2);
        assert_eq!(lexicon.bigram_count(), 1);
    }

    #[test]
    fn lexicon_rejects_three_word_entries() {
        assert!(StopwordLexicon::parse("a b c").is_err());
    }

    #[test]
    fn suffix_rules_parse_and_validate() {
        let rules = parse_suffix_rules("# c\nler\t2\nde\t3\n").unwrap();
        assert_eq!(rules.len(), 2);
        assert!(parse_suffix_rules("ler\t1").is_err(), "min below 2");
        assert!(parse_suffix_rules("\t3").is_err(), "empty suffix");
        assert!(parse_suffix_rules("ler 2").is_err(), "missing tab");
        assert!(parse_suffix_rules("ler\t2\nler\t3").is_err(), "duplicate");
    }

    #[test]
    fn rule_order_in_file_is_irrelevant() {
        let forward = parse_suffix_rules("e\t4\nler\t2\nülen\t3").unwrap();
        let backward = parse_suffix_rules("ülen\t3\nler\t2\ne\t4").unwrap();
        let a = SimplifierConfig::new(StopwordLexicon::default(), forward, 3).unwrap();
        let b = SimplifierConfig::new(StopwordLexicon::default(), backward, 3).unwrap();
        assert_eq!(a.rules(), b.rules());
        assert_eq!(stem("öngörülen", &a), stem("öngörülen", &b));
    }

    #[test]
    fn rules_are_sorted_longest_first() {
        let config = shipped();
        let lens: Vec<usize> = config.rules().iter().map(|r| r.char_len()).collect();
        assert!(lens.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn config_from_files_reads_overrides() {
        let dir = tempfile::tempdir().unwrap();
        let stop = dir.path().join("stop.txt");
        let suff = dir.path().join("suff.tsv");
        std::fs::write(&stop, "testword\n").unwrap();
        std::fs::write(&suff, "zzz\t2\n").unwrap();
        let config = SimplifierConfig::from_files(Some(&stop), Some(&suff)).unwrap();
        assert!(config.lexicon().contains_unigram("testword"));
        assert_eq!(config.rules().len(), 1);
        assert_eq!(simplify_line("testword abczzz", &config), "abc");
    }

    #[test]
    fn config_from_missing_file_names_path() {
        let err =
            SimplifierConfig::from_files(Some(Path::new("/no/such/stopwords")), None).unwrap_err();
        assert!(err.to_string().contains("/no/such/stopwords"));
    }
}
