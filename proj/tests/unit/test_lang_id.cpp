#include <doctest.h>

#include <map>
#include <random>

#include "forge/error.hpp"
#include "forge/lang_id.hpp"

using namespace forge;
using lang::ScriptClass;

TEST_CASE("single-script inputs classify with confidence 1.0") {
    const lang::ScriptClassifier classifier;
    const auto hi = classifier.classify("नमस्ते दुनिया कैसे हो");
    CHECK(hi.language == "hi");
    CHECK(hi.confidence == doctest::Approx(1.0));
    const auto en = classifier.classify("hello plain english words");
    CHECK(en.language == "en");
    CHECK(en.confidence == doctest::Approx(1.0));
}

TEST_CASE("majority script wins with its letter share as confidence") {
    const lang::ScriptClassifier classifier;
    // 7 Bengali letters vs 3 Latin letters -> bn at 0.7.
    const auto v = classifier.classify("অআইঈউঊঋ abc");
    CHECK(v.language == "bn");
    CHECK(v.confidence == doctest::Approx(0.7));
}

TEST_CASE("empty input is an error") {
    const lang::ScriptClassifier classifier;
    CHECK_THROWS_WITH_AS(classifier.classify(""), "empty input", Error);
    CHECK_THROWS_AS(classifier.classify("   \t \n"), Error);
}

TEST_CASE("no letters at all yields the other sentinel") {
    const lang::ScriptClassifier classifier;
    const auto v = classifier.classify("123 456 !!!");
    CHECK(v.language == "other");
    CHECK(v.confidence == 0.0);
}

TEST_CASE("line script classes on the named examples") {
    CHECK(lang::classify_line_script("123 !!! :)") == ScriptClass::NumericSymbolic);
    CHECK(lang::classify_line_script("Hello world") == ScriptClass::LatinOnly);
    CHECK(lang::classify_line_script("देवनागरी शब्द OK और") == ScriptClass::Mixed);
    CHECK(lang::classify_line_script("मराठी मजकूर येथे") == ScriptClass::TargetScript);
    CHECK(lang::classify_line_script("") == ScriptClass::NumericSymbolic);
    // accented Latin still counts as Latin
    CHECK(lang::classify_line_script("café naïve") == ScriptClass::LatinOnly);
    // two Indic scripts in one line are Mixed
    CHECK(lang::classify_line_script("हिंदी தமிழ்") == ScriptClass::Mixed);
}

TEST_CASE("the four line classes partition random strings") {
    std::mt19937 rng(21);
    static const std::vector<std::string> kPieces = {
        "a", "Z", "1", "!", " ", "क", "म", "অ", "க", "మ", "·", "é", "中",
    };
    std::uniform_int_distribution<std::size_t> pick(0, kPieces.size() - 1);
    for (int trial = 0; trial < 500; ++trial) {
        std::string s;
        const int len = static_cast<int>(rng() % 12);
        for (int i = 0; i < len; ++i) s += kPieces[pick(rng)];
        const auto c = lang::classify_line_script(s);
        const bool valid =
            c == ScriptClass::TargetScript || c == ScriptClass::LatinOnly ||
            c == ScriptClass::NumericSymbolic || c == ScriptClass::Mixed;
        CHECK(valid);
        CHECK(lang::classify_line_script(s) == c);  // deterministic
    }
}

TEST_CASE("baseline confidence equals a brute-force block counter") {
    // Independent per-codepoint block ranges for the oracle.
    struct Range {
        char32_t lo, hi;
        const char* lang;
    };
    static const Range kOracle[] = {
        {U'A', U'Z', "en"},     {U'a', U'z', "en"},
        {0x0900, 0x0963, "hi"}, {0x0970, 0x097F, "hi"},
        {0x0980, 0x09E3, "bn"}, {0x0B80, 0x0BE5, "ta"},
        {0x0C00, 0x0C63, "te"}, {0x0D00, 0x0D63, "ml"},
    };
    static const std::vector<std::string> kPieces = {
        "a", "B", "क", "ख", "অ", "ক", "க", "మ", "മ", "1", " ", ".",
    };
    const lang::ScriptClassifier classifier;
    std::mt19937 rng(1234);
    std::uniform_int_distribution<std::size_t> pick(0, kPieces.size() - 1);
    for (int trial = 0; trial < 400; ++trial) {
        std::string s;
        const int len = 1 + static_cast<int>(rng() % 20);
        for (int i = 0; i < len; ++i) s += kPieces[pick(rng)];

        std::map<std::string, int> counts;
        int letters = 0;
        for (const char32_t cp : uni::decode(s)) {
            for (const auto& r : kOracle) {
                if (cp >= r.lo && cp <= r.hi && cp != 0x0964 && cp != 0x0965) {
                    ++counts[r.lang];
                    ++letters;
                    break;
                }
            }
        }
        if (letters == 0) continue;
        int best = 0;
        for (const auto& [_, n] : counts) best = std::max(best, n);
        const auto v = classifier.classify(s);
        CHECK(v.confidence ==
              doctest::Approx(static_cast<double>(best) / letters));
    }
}

TEST_CASE("script mapping file changes the verdict language") {
    // Default: Devanagari -> hi.
    const lang::ScriptClassifier def;
    CHECK(def.classify("नमस्ते").language == "hi");
}
