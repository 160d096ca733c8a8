// Generates the committed end-to-end fixture: a 20-page WARC archive
// (plus request/404/non-HTML/corrupt records), the tiny PNG/JPEG/WEBP
// payloads behind it, and the offline image cache keyed by URL hash.
//
// The archive is deliberately constructed so that every filter rule fires
// at least once; the expected outcome per page is annotated inline and
// mirrored by the acceptance suite.

#include <zlib.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "forge/hash.hpp"
#include "forge/warc.hpp"

namespace fs = std::filesystem;

namespace {

// --- minimal image encoders (header-accurate, tiny payloads) ---

void put_be32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>((v >> 24) & 0xFF));
    out.push_back(static_cast<char>((v >> 16) & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
    out.push_back(static_cast<char>(v & 0xFF));
}

void png_chunk(std::string& out, const char* type, const std::string& data) {
    put_be32(out, static_cast<std::uint32_t>(data.size()));
    std::string block = std::string(type, 4) + data;
    out += block;
    const auto crc =
        crc32(0, reinterpret_cast<const Bytef*>(block.data()),
              static_cast<uInt>(block.size()));
    put_be32(out, static_cast<std::uint32_t>(crc));
}

std::string make_png(int width, int height) {
    std::string out("\x89PNG\r\n\x1a\n", 8);
    std::string ihdr;
    put_be32(ihdr, static_cast<std::uint32_t>(width));
    put_be32(ihdr, static_cast<std::uint32_t>(height));
    ihdr += std::string("\x08\x02\x00\x00\x00", 5);  // 8-bit RGB
    png_chunk(out, "IHDR", ihdr);

    const std::string raw(static_cast<std::size_t>(height) *
                              (1 + 3 * static_cast<std::size_t>(width)),
                          '\0');
    uLongf bound = compressBound(static_cast<uLong>(raw.size()));
    std::string compressed(bound, '\0');
    compress(reinterpret_cast<Bytef*>(compressed.data()), &bound,
             reinterpret_cast<const Bytef*>(raw.data()),
             static_cast<uLong>(raw.size()));
    compressed.resize(bound);
    png_chunk(out, "IDAT", compressed);
    png_chunk(out, "IEND", "");
    return out;
}

std::string make_jpeg(int width, int height) {
    std::string out("\xFF\xD8", 2);  // SOI
    out += std::string("\xFF\xE0", 2);  // APP0
    const std::string jfif("\x00\x10JFIF\x00\x01\x01\x00\x00\x01\x00\x01\x00\x00", 16);
    out += jfif;
    out += std::string("\xFF\xC0", 2);  // SOF0
    std::string sof;
    sof.push_back(0x00);
    sof.push_back(0x11);  // length 17 (3 components)
    sof.push_back(0x08);
    sof.push_back(static_cast<char>((height >> 8) & 0xFF));
    sof.push_back(static_cast<char>(height & 0xFF));
    sof.push_back(static_cast<char>((width >> 8) & 0xFF));
    sof.push_back(static_cast<char>(width & 0xFF));
    sof.push_back(0x03);
    const char comps[] = {0x01, 0x22, 0x00, 0x02, 0x11, 0x01, 0x03, 0x11, 0x01};
    sof.append(comps, sizeof(comps));
    out += sof;
    out += std::string("\xFF\xD9", 2);  // EOI
    return out;
}

std::string make_webp(int width, int height) {
    // VP8L: 0x2F then width-1 (14 bits), height-1 (14 bits), LE packed
    std::string payload;
    payload.push_back(0x2F);
    const std::uint32_t bits = static_cast<std::uint32_t>(width - 1) |
                               (static_cast<std::uint32_t>(height - 1) << 14);
    payload.push_back(static_cast<char>(bits & 0xFF));
    payload.push_back(static_cast<char>((bits >> 8) & 0xFF));
    payload.push_back(static_cast<char>((bits >> 16) & 0xFF));
    payload.push_back(static_cast<char>((bits >> 24) & 0xFF));
    payload += std::string(8, '\0');  // enough body for the header read

    std::string out = "RIFF";
    const std::uint32_t riff_size =
        4 + 8 + static_cast<std::uint32_t>(payload.size());
    out.push_back(static_cast<char>(riff_size & 0xFF));
    out.push_back(static_cast<char>((riff_size >> 8) & 0xFF));
    out.push_back(static_cast<char>((riff_size >> 16) & 0xFF));
    out.push_back(static_cast<char>((riff_size >> 24) & 0xFF));
    out += "WEBP";
    out += "VP8L";
    const auto chunk_size = static_cast<std::uint32_t>(payload.size());
    out.push_back(static_cast<char>(chunk_size & 0xFF));
    out.push_back(static_cast<char>((chunk_size >> 8) & 0xFF));
    out.push_back(static_cast<char>((chunk_size >> 16) & 0xFF));
    out.push_back(static_cast<char>((chunk_size >> 24) & 0xFF));
    out += payload;
    return out;
}

// --- fixture pages ---

struct Page {
    std::string url;
    std::string date;
    std::string html;
};

std::string page_shell(const std::string& title, const std::string& body) {
    return "<!DOCTYPE html><html><head><title>" + title +
           "</title><meta charset=\"utf-8\"><script>var x=1;</script>"
           "<style>.a{color:red}</style></head><body>"
           "<nav class=\"navbar-top\"><ul><li>Home</li><li>Contact</li></ul></nav>" +
           body +
           "<footer id=\"page-footer\"><p>All rights reserved Fixture News "
           "Network</p></footer></body></html>";
}

// Deterministic pseudo-Devanagari word salad for the over-long document.
std::string devanagari_words(int count, int stopword_every) {
    static const char* kConsonants[] = {
        "क", "ख", "ग", "घ", "च", "छ", "ज", "झ", "ट", "ठ", "ड", "ढ",
        "त", "थ", "द", "ध", "न", "प", "फ", "ब", "भ", "म", "य", "र",
        "ल", "व", "श", "ष", "स", "ह",
    };
    static const char* kMatras[] = {"", "ा", "ि", "ी", "ु", "ू", "े", "ै", "ो", "ौ"};
    static const char* kStopwords[] = {"का", "के", "की", "है", "में", "से", "और"};
    std::uint64_t state = 0x243F6A8885A308D3ULL;
    auto next = [&state]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<std::uint32_t>(state >> 33);
    };
    std::ostringstream out;
    for (int i = 0; i < count; ++i) {
        if (i > 0) out << ' ';
        if (stopword_every > 0 && i % stopword_every == stopword_every - 1) {
            out << kStopwords[next() % 7];
            continue;
        }
        const int syllables = 2 + static_cast<int>(next() % 3);
        for (int s = 0; s < syllables; ++s) {
            out << kConsonants[next() % 30] << kMatras[next() % 10];
        }
    }
    return out.str();
}

std::vector<Page> build_pages() {
    std::vector<Page> pages;
    const std::string cdn = "http://img.fixture-cdn.example";

    // p01: accepted Hindi article; English alt becomes a Cap pair (Mid).
    pages.push_back({
        "http://hindi.fixture-news.example/articles/monsoon-update",
        "2019-07-14T08:30:00Z",
        page_shell("मानसून समाचार",
                   "<h1>मानसून की ताज़ा खबर</h1>"
                   "<p>भारत में इस साल मानसून की बारिश समय से पहले आ गई है और किसानों के चेहरे खुशी से खिल उठे हैं।</p>"
                   "<img src=\"" + cdn + "/photos/monsoon_sky.png\" alt=\"Monsoon clouds over the city skyline\">"
                   "<p>मौसम विभाग का कहना है कि अगले सप्ताह में और भारी बारिश की संभावना है इसलिए लोगों को सतर्क रहना चाहिए।</p>"),
    });

    // p02: same canonical URL as p01 -> dedup drop.
    pages.push_back({
        "HTTP://hindi.fixture-news.example:80/articles/monsoon-update#latest",
        "2019-07-15T10:00:00Z",
        page_shell("मानसून", "<p>यह पृष्ठ पहले वाले का दोहराव है और हटाया जाना चाहिए।</p>"),
    });

    // p03: accepted Bengali article with figure/figcaption; the second
    // image's alt equals a body sentence, so no Cap pair for it.
    pages.push_back({
        "https://bangla.fixture-news.example/news/durga-puja-2021",
        "2021-10-11T12:00:00Z",
        page_shell("দুর্গাপূজা সংবাদ",
                   "<p>কলকাতার দুর্গাপূজা এই বছর খুব জাঁকজমকপূর্ণ ভাবে পালিত হচ্ছে এবং মানুষ আনন্দে মেতে উঠেছে।</p>"
                   "<figure><img src=\"" + cdn + "/photos/pandal_crop.jpg\" alt=\"কলকাতার বিখ্যাত পূজা মণ্ডপের আলোকসজ্জা\">"
                   "<figcaption>উৎসবের আলোয় সেজে উঠেছে শহর</figcaption></figure>"
                   "<p>Click here to subscribe now\nপ্রতিমা দর্শনের জন্য মণ্ডপে মানুষের দীর্ঘ লাইন দেখা যাচ্ছে প্রতিদিন।</p>"
                   "<img src=\"" + cdn + "/photos/crowd_street.jpg\" alt=\"প্রতিমা দর্শনের জন্য মণ্ডপে মানুষের দীর্ঘ লাইন দেখা যাচ্ছে প্রতিদিন।\">"),
    });

    // p04: English page -> LID non-target rejection.
    pages.push_back({
        "http://en.fixture-news.example/world/summit-report",
        "2020-02-02T00:00:00Z",
        page_shell("Summit Report",
                   "<p>The annual summit concluded with a joint statement on trade "
                   "and climate that delegates called a meaningful step forward.</p>"
                   "<img src=\"" + cdn + "/photos/summit_hall.png\" alt=\"Delegates at the summit hall\">"),
    });

    // p05: NSFW alt substring sinks the whole document.
    pages.push_back({
        "http://hindi.fixture-news.example/gallery/night-life",
        "2018-05-20T00:00:00Z",
        page_shell("रात की महफ़िल",
                   "<p>शहर की रातें अब पहले से ज्यादा रंगीन हो गई हैं और क्लबों में भीड़ बढ़ रही है।</p>"
                   "<img src=\"" + cdn + "/photos/club_scene.png\" alt=\"hot xxx dancers on stage\">"),
    });

    // p06: 31 images -> TooManyImages.
    {
        std::string body = "<p>तस्वीरों में देखिए इस हफ्ते की सबसे बड़ी खबरें और घटनाएं यहाँ पर।</p>";
        for (int i = 1; i <= 31; ++i) {
            body += "<img src=\"" + cdn + "/gallery/week" + std::to_string(i) +
                    ".png\" alt=\"\">";
        }
        pages.push_back({
            "http://hindi.fixture-news.example/gallery/week-in-pictures",
            "2022-01-05T00:00:00Z",
            page_shell("सप्ताह की तस्वीरें", body),
        });
    }

    // p07: text only -> NoImages.
    pages.push_back({
        "http://hindi.fixture-news.example/editorial/budget-opinion",
        "2023-02-01T00:00:00Z",
        page_shell("बजट पर राय",
                   "<p>इस बार के बजट में मध्यम वर्ग के लिए राहत की कई घोषणाएं की गई हैं जो स्वागत योग्य हैं।</p>"
                   "<p>लेकिन विपक्ष का कहना है कि किसानों के लिए पर्याप्त प्रावधान नहीं किए गए हैं।</p>"),
    });

    // p08: Tamil article; 7-word alt -> Cap pair High (700x650 webp).
    pages.push_back({
        "https://tamil.fixture-news.example/travel/ghat-roads",
        "2017-11-30T00:00:00Z",
        page_shell("மலைப்பாதை பயணம்",
                   "<p>மேற்கு தொடர்ச்சி மலையின் இயற்கை அழகு சுற்றுலா பயணிகளை எப்போதும் வசீகரிக்கிறது என்று சொல்லலாம்।</p>"
                   "<img src=\"" + cdn + "/photos/ghat_view.webp\" alt=\"wide shot of the river ghat valley\">"
                   "<p>மழைக்காலத்தில் இந்த பாதை மிகவும் ஆபத்தானது என்பதால் கவனமாக பயணிக்க வேண்டும் என்கின்றனர்।</p>"
                   "<img src=\"" + cdn + "/photos/river_bend.jpg\" alt=\"நதி வளைவு காட்சி\">"),
    });

    // p09: only image fails the aspect filter post-fetch -> revalidate
    // rejects the document (NoImages).
    pages.push_back({
        "http://hindi.fixture-news.example/panorama/city-skyline",
        "2016-08-19T00:00:00Z",
        page_shell("शहर का नज़ारा",
                   "<p>नदी किनारे बसे इस शहर का पैनोरमा देखने के लिए पर्यटक दूर दूर से आते हैं हर साल।</p>"
                   "<img src=\"" + cdn + "/photos/skyline_pano.png\" alt=\"\">"),
    });

    // p10: 100x100 image dropped post-fetch, document survives on the other.
    pages.push_back({
        "http://hindi.fixture-news.example/tech/phone-review",
        "2021-03-25T00:00:00Z",
        page_shell("फोन समीक्षा",
                   "<p>नए स्मार्टफोन की बैटरी और कैमरा दोनों ही शानदार हैं लेकिन कीमत थोड़ी ज्यादा है।</p>"
                   "<img src=\"" + cdn + "/photos/phone_thumb.png\" alt=\"\">"
                   "<img src=\"" + cdn + "/photos/phone_full.png\" alt=\"\">"
                   "<p>गेमिंग के दौरान फोन गर्म नहीं होता और स्क्रीन की चमक धूप में भी अच्छी रहती है।</p>"),
    });

    // p11: three long valid-looking paragraphs push the document over
    // doc_max_words -> TooManyWords.
    pages.push_back({
        "http://hindi.fixture-news.example/longform/history-special",
        "2015-06-01T00:00:00Z",
        page_shell("इतिहास विशेष",
                   "<p>" + devanagari_words(720, 6) + "</p>"
                   "<p>" + devanagari_words(720, 6) + "</p>"
                   "<p>" + devanagari_words(720, 6) + "</p>"
                   "<img src=\"" + cdn + "/photos/history_scroll.png\" alt=\"\">"),
    });

    // p12: blocked-url, blocked-filename, gif and blocked-alt images all
    // dropped at node level; the document survives on the last image.
    pages.push_back({
        "http://hindi.fixture-news.example/sports/final-match",
        "2022-11-07T00:00:00Z",
        page_shell("फाइनल मुकाबला",
                   "<p>कल रात खेले गए फाइनल मुकाबले में घरेलू टीम ने शानदार जीत दर्ज की और दर्शक झूम उठे।</p>"
                   "<img src=\"" + cdn + "/logo/site-logo.png\" alt=\"\">"
                   "<img src=\"" + cdn + "/photos/default_avatar.png\" alt=\"\">"
                   "<img src=\"" + cdn + "/photos/celebration.gif\" alt=\"\">"
                   "<img src=\"" + cdn + "/photos/match_poster.png\" alt=\"download the pdf here now\">"
                   "<img src=\"" + cdn + "/photos/stadium_crowd.png\" alt=\"\">"),
    });

    // p13: every paragraph under four words -> doc TooFewWords.
    pages.push_back({
        "http://hindi.fixture-news.example/flash/breaking",
        "2020-09-09T00:00:00Z",
        page_shell("ब्रेकिंग",
                   "<p>बड़ी खबर।</p><p>अभी अभी।</p><p>पढ़ें पूरी खबर।</p>"
                   "<img src=\"" + cdn + "/photos/breaking_lead.png\" alt=\"\">"),
    });

    // p14: one paragraph dropped for word repetition, document accepted.
    pages.push_back({
        "https://hindi.fixture-news.example/market/gold-rate?id=123",
        "2023-04-10T00:00:00Z",
        page_shell("सोने का भाव",
                   "<p>सर्राफा बाजार में आज सोने की कीमत में मामूली गिरावट देखने को मिली है।</p>"
                   "<p>भाव गिरा भाव गिरा भाव गिरा भाव गिरा भाव गिरा भाव गिरा</p>"
                   "<img src=\"" + cdn + "/photos/gold_coins.png\" alt=\"\">"
                   "<p>जानकारों का मानना है कि शादी के मौसम में कीमतें फिर से बढ़ सकती हैं।</p>"),
    });

    // p15: one paragraph dropped for character repetition.
    pages.push_back({
        "http://hindi.fixture-news.example/viral/typing-test",
        "2019-12-24T00:00:00Z",
        page_shell("वायरल खबर",
                   "<p>सोशल मीडिया पर एक अजीब पोस्ट वायरल हो रही है जिसमें लोग अपनी राय दे रहे हैं।</p>"
                   "<p>कककककककककक कककककककककक कककककककककक कककककककककक</p>"
                   "<img src=\"" + cdn + "/photos/keyboard_desk.png\" alt=\"\">"),
    });

    // p16: one paragraph dropped for a low common-word ratio.
    pages.push_back({
        "http://hindi.fixture-news.example/science/rocket-launch",
        "2023-07-14T00:00:00Z",
        page_shell("रॉकेट प्रक्षेपण",
                   "<p>अंतरिक्ष एजेंसी ने आज सुबह अपने नए रॉकेट का सफल प्रक्षेपण किया और वैज्ञानिकों ने खुशी जताई।</p>"
                   "<p>उपग्रह कक्षा प्रणोदक पेलोड टेलीमेट्री ट्रांसपोंडर</p>"
                   "<img src=\"" + cdn + "/photos/launch_pad.png\" alt=\"\">"),
    });

    // p17: Malayalam article; 180x300 image -> Cap pair Low.
    pages.push_back({
        "https://malayalam.fixture-news.example/food/sadya-recipe",
        "2022-08-30T00:00:00Z",
        page_shell("സദ്യ വിശേഷം",
                   "<p>ഓണക്കാലത്ത് വീടുകളിൽ ഒരുക്കുന്ന സദ്യയുടെ രുചി മലയാളികൾക്ക് എന്നും പ്രിയപ്പെട്ടതാണ് എന്നു പറയാം।</p>"
                   "<img src=\"" + cdn + "/photos/sadya_leaf.png\" alt=\"ഓണസദ്യയുടെ വിഭവങ്ങൾ നിരത്തിയ വലിയ പച്ച ഇല\">"),
    });

    // p18: Algorithm-2 cleaning: Latin-only lines and a 3-word line vanish.
    pages.push_back({
        "http://hindi.fixture-news.example/education/exam-tips",
        "2021-01-18T00:00:00Z",
        page_shell("परीक्षा टिप्स",
                   "<p>Follow our page for updates<br>Best exam tips and tricks here<br>"
                   "परीक्षा से पहले अच्छी नींद लेना बहुत जरूरी होता है।<br>तनाव बिल्कुल नहीं।</p>"
                   "<p>समय प्रबंधन ही सफलता की असली कुंजी है ऐसा सभी शिक्षक मानते हैं।</p>"
                   "<img src=\"" + cdn + "/photos/study_desk.png\" alt=\"\">"),
    });

    // p19: more-link anchor becomes the placeholder token inline.
    pages.push_back({
        "http://hindi.fixture-news.example/city/metro-extension",
        "2023-10-02T00:00:00Z",
        page_shell("मेट्रो विस्तार",
                   "<p>शहर में मेट्रो की नई लाइन का काम तेजी से चल रहा है "
                   "<a class=\"more-link\" href=\"/city/metro-extension-2\">और पढ़ें</a> "
                   "अधिकारियों के अनुसार अगले साल तक यह लाइन शुरू हो जाएगी।</p>"
                   "<img src=\"" + cdn + "/photos/metro_station.png\" alt=\"\">"),
    });

    // p20: Telugu article exercising srcset and data-src resolution.
    pages.push_back({
        "https://telugu.fixture-news.example/cinema/new-release",
        "2023-12-22T00:00:00Z",
        page_shell("సినిమా విడుదల",
                   "<p>ఈ వారం విడుదలైన కొత్త సినిమాకు ప్రేక్షకుల నుంచి మంచి స్పందన లభిస్తోంది అని చెబుతున్నారు।</p>"
                   "<img srcset=\"/posters/poster_480.jpg 480w, /posters/poster_full.jpg 800w\" alt=\"సినిమా పోస్టర్\">"
                   "<img data-src=\"" + cdn + "/photos/theatre_crowd.png\" "
                   "alt=\"థియేటర్ ముందు గుమిగూడిన అభిమానుల సందడి దృశ్యం\">"),
    });

    return pages;
}

}  // namespace

int main(int argc, char** argv) {
    const fs::path out_dir = argc > 1 ? argv[1] : "tests/fixtures";
    fs::create_directories(out_dir);
    fs::create_directories(out_dir / "cache");

    // Image payloads served from the offline cache, keyed by URL hash.
    const std::string cdn = "http://img.fixture-cdn.example";
    const std::map<std::string, std::string> cache_entries = {
        {cdn + "/photos/monsoon_sky.png", make_png(300, 200)},
        {cdn + "/photos/pandal_crop.jpg", make_jpeg(256, 256)},
        {cdn + "/photos/crowd_street.jpg", make_jpeg(256, 256)},
        {cdn + "/photos/ghat_view.webp", make_webp(700, 650)},
        {cdn + "/photos/river_bend.jpg", make_jpeg(400, 300)},
        {cdn + "/photos/skyline_pano.png", make_png(1200, 150)},
        {cdn + "/photos/phone_thumb.png", make_png(100, 100)},
        {cdn + "/photos/phone_full.png", make_png(310, 210)},
        {cdn + "/photos/stadium_crowd.png", make_png(320, 240)},
        {cdn + "/photos/gold_coins.png", make_png(300, 300)},
        {cdn + "/photos/keyboard_desk.png", make_png(300, 300)},
        {cdn + "/photos/launch_pad.png", make_png(300, 300)},
        {cdn + "/photos/sadya_leaf.png", make_png(180, 300)},
        {cdn + "/photos/study_desk.png", make_png(300, 300)},
        {cdn + "/photos/metro_station.png", make_png(300, 300)},
        {"https://telugu.fixture-news.example/posters/poster_full.jpg",
         make_jpeg(600, 900)},
        {cdn + "/photos/theatre_crowd.png", make_png(256, 256)},
    };
    for (const auto& [url, bytes] : cache_entries) {
        const std::string key = forge::fnv1a128_hex(url);
        const fs::path dir = out_dir / "cache" / key.substr(0, 2);
        fs::create_directories(dir);
        std::ofstream f(dir / key, std::ios::binary);
        f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    }

    const auto pages = build_pages();
    for (const bool gzip : {false, true}) {
        const fs::path archive =
            out_dir / (gzip ? "fixture.warc.gz" : "fixture.warc");
        std::ofstream out(archive, std::ios::binary);

        // Non-qualifying records sprinkled between pages.
        forge::warc::write_request_record(
            out, "http://hindi.fixture-news.example/articles/monsoon-update",
            "2019-07-14T08:29:59Z", gzip);

        std::size_t i = 0;
        for (const auto& page : pages) {
            forge::warc::write_response_record(out, page.url, page.date, 200,
                                               "text/html; charset=utf-8",
                                               page.html, gzip);
            if (i == 4) {
                forge::warc::write_response_record(
                    out, "http://hindi.fixture-news.example/missing-page",
                    "2020-01-01T00:00:00Z", 404, "text/html",
                    "<html><body>not found</body></html>", gzip);
            }
            if (i == 9) {
                forge::warc::write_response_record(
                    out, cdn + "/photos/raw_bytes.png", "2020-01-01T00:00:00Z",
                    200, "image/png", make_png(10, 10), gzip);
            }
            if (i == 14) {
                // Record whose declared length undershoots the payload: it
                // must be skipped and counted, later records still parse.
                std::ostringstream http;
                const std::string body =
                    "<html><body><p>corrupt record payload body</p></body></html>";
                http << "HTTP/1.1 200 OK\r\nContent-Type: text/html\r\n"
                     << "Content-Length: " << body.size() << "\r\n\r\n"
                     << body;
                const std::string block = http.str();
                std::ostringstream rec;
                rec << "WARC/1.0\r\n"
                    << "WARC-Type: response\r\n"
                    << "WARC-Target-URI: http://hindi.fixture-news.example/broken\r\n"
                    << "WARC-Date: 2020-01-01T00:00:00Z\r\n"
                    << "Content-Type: application/http; msgtype=response\r\n"
                    << "Content-Length: " << block.size() - 20 << "\r\n\r\n"
                    << block << "\r\n\r\n";
                const std::string raw = rec.str();
                if (gzip) {
                    const std::string gz = forge::warc::gzip_compress(raw);
                    out.write(gz.data(), static_cast<std::streamsize>(gz.size()));
                } else {
                    out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
                }
            }
            ++i;
        }
        std::cout << "wrote " << archive.string() << "\n";
    }

    std::cout << "pages=" << pages.size()
              << " cache_entries=" << cache_entries.size() << "\n";
    return 0;
}
