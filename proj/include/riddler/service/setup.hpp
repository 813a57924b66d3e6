#pragma once

#include <fstream>
#include <map>
#include <string>

#include "riddler/corpus.hpp"
#include "riddler/service/config.hpp"

namespace riddler::service {

inline CorpusPtr load_snapshot_file(const std::string& path, Language expected) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError("cannot read snapshot " + path);
    CorpusPtr ix;
    try {
        ix = load_snapshot(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), e.line());
    }
    if (ix->language() != expected)
        throw ConfigError(path + " holds a " + std::string(to_string(ix->language())) + " corpus");
    return ix;
}

inline CorpusPtr load_corpus(Language lang, const CorpusSource& src) {
    if (!src.snapshot.empty()) return load_snapshot_file(src.snapshot, lang);
    CorpusBuilder b(lang);
    for (const auto& [path, genre] : src.files) b.add_file(path, genre);
    return b.build();
}

// One index per configured language; a language without a source is an error.
inline std::map<Language, CorpusPtr> load_corpora(const ServiceConfig& cfg) {
    std::map<Language, CorpusPtr> out;
    for (Language l : cfg.languages) {
        auto it = cfg.corpora.find(l);
        if (it == cfg.corpora.end()) throw ConfigError("no corpus configured for " + std::string(to_string(l)));
        out[l] = load_corpus(l, it->second);
    }
    return out;
}

}  // namespace riddler::service
