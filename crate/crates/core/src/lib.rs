//! Sentiment timelines for multilingual short-text streams.
//!
//! The pipeline tokenizes time-stamped posts, embeds them in a shared
//! cross-lingual vector space, scores each one with a bidirectional LSTM,
//! and runs a generalized ESD test over the score series to find abnormally
//! positive or negative stretches, which are then summarized by their most
//! frequent terms.

pub mod corpus;
pub mod embeddings;
pub mod esd;
pub mod timeline;
pub mod sentiment;
pub mod pipeline;
