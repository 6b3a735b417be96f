#include "rdaug/resources.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "rdaug/error.hpp"

namespace rdaug {

namespace {

constexpr const char* kDefaultLexicon = R"(# word<TAB>synonyms separated by |
sick	ill|unwell
bad	awful|terrible
terrible	awful|horrible
awful	terrible|dreadful
horrible	awful|dreadful
tired	exhausted|weary
exhausted	tired|drained
really	truly|very
scared	afraid|frightened
worried	anxious|concerned
happy	glad|pleased
sad	unhappy|down
friend	pal|buddy
friends	pals|buddies
family	relatives|folks
doctor	physician|doc
home	house
rising	increasing|climbing
cases	infections
fever	temperature
symptoms	signs
started	began
results	findings
hope	wish
safe	secure
think	believe|reckon
people	folks|persons
everyone	everybody
quickly	rapidly|fast
finally	eventually
news	reports
vaccine	jab|shot
isolating	quarantining
quarantine	isolation
week	weekend
mild	slight|light
)";

constexpr const char* kDefaultReserved = R"(covid,covid-19,coronavirus,corona,sars-cov-2
)";

constexpr const char* kDefaultVerbs = R"(# present<TAB>past for irregular verbs, bare verb for the regular suffix
am	was
is	was
are	were
have	had
has	had
do	did
does	did
go	went
goes	went
get	got
gets	got
feel	felt
feels	felt
come	came
comes	came
take	took
takes	took
think	thought
know	knew
say	said
see	saw
find	found
keep	kept
begin	began
catch	caught
make	made
give	gave
can	could
will	would
test
cough
start
need
want
stay
wait
worry
hope
stop
look
call
visit
isolate
recover
seem
work
help
try
quarantine
believe
)";

constexpr const char* kDefaultEnDe = R"(# en -> de
i have	ich habe
i am	ich bin
tested positive	positiv getestet
tested negative	negativ getestet
positive	positiv
negative	negativ
sick	krank
bad	schlecht
today	heute
my	mein
test	test
came back	kam zurueck
feel	fuehle mich
i	ich
for	fuer
with	mit
got	bekam
diagnosed	diagnostiziert
hospitalized	ins krankenhaus eingeliefert
results	ergebnisse
friend	freund
family	familie
cases	faelle
are rising	steigen
stay safe	bleib sicher
at home	zu hause
and	und
the	die
)";

constexpr const char* kDefaultDeEn = R"(# de -> en
ich habe	i have
ich bin	i am
positiv getestet	tested positive
negativ getestet	tested negative
positiv	positive
negativ	negative
krank	ill
schlecht	bad
heute	today
mein	my
test	test
kam zurueck	returned
fuehle mich	feel
ich	i
fuer	for
mit	with
bekam	received
diagnostiziert	diagnosed
ins krankenhaus eingeliefert	hospitalized
ergebnisse	results
freund	friend
familie	family
faelle	cases
steigen	are increasing
bleib sicher	stay safe
zu hause	at home
und	and
die	the
)";

template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        fn(line, line_no);
    }
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto p = s.find(sep, start);
        out.emplace_back(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
        if (p == std::string_view::npos) {
            return out;
        }
        start = p + 1;
    }
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::string where(const std::string& source, std::size_t line_no) {
    return source + ":" + std::to_string(line_no);
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

template <typename T, typename Reader>
T load_with(const std::filesystem::path& path, Reader reader) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string() + " for reading");
    }
    return reader(in, path.string());
}

template <typename T, typename Reader>
T parse_builtin(const char* text, Reader reader, const char* name) {
    std::istringstream in(text);
    return reader(in, name);
}

}  // namespace

const std::vector<std::string>* SynonymLexicon::find(std::string_view word) const {
    const auto it = entries.find(word);
    return it == entries.end() ? nullptr : &it->second;
}

std::optional<std::size_t> ReservedClasses::class_of(std::string_view token) const {
    const auto it = index_.find(token);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

ReservedClasses make_reserved_classes(std::vector<std::vector<std::string>> classes) {
    ReservedClasses rc;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (classes[c].size() < 2) {
            throw ValueError("reserved class " + std::to_string(c) + " needs at least two members");
        }
        for (const auto& m : classes[c]) {
            if (m.empty() || m.find_first_of(" \t") != std::string::npos) {
                throw ValueError("reserved class member '" + m + "' must be a single token");
            }
            if (!rc.index_.emplace(m, c).second) {
                throw ValueError("reserved token '" + m + "' appears in more than one place");
            }
        }
    }
    rc.classes = std::move(classes);
    return rc;
}

std::string regular_past(std::string_view verb) {
    std::string v(verb);
    if (v.empty()) {
        return v;
    }
    const char last = v.back();
    if (last == 'e') {
        return v + "d";
    }
    if (last == 'y' && v.size() >= 2 && !is_vowel(v[v.size() - 2])) {
        v.pop_back();
        return v + "ied";
    }
    if (v.size() >= 3) {
        const char a = v[v.size() - 3];
        const char b = v[v.size() - 2];
        const auto vowels = std::count_if(v.begin(), v.end(), [](char c) { return is_vowel(c); });
        const bool cvc = !is_vowel(a) && is_vowel(b) && !is_vowel(last) && last != 'w' && last != 'x' &&
                         last != 'y';
        if (cvc && vowels == 1) {
            return v + last + "ed";
        }
    }
    return v + "ed";
}

std::vector<std::string> split_whitespace(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r' ||
                                   text[i] == '\f' || text[i] == '\v')) {
            ++i;
        }
        const auto start = i;
        while (i < text.size() && !(text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r' ||
                                    text[i] == '\f' || text[i] == '\v')) {
            ++i;
        }
        if (i > start) {
            tokens.emplace_back(text.substr(start, i - start));
        }
    }
    return tokens;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) {
            out.push_back(' ');
        }
        out += t;
    }
    return out;
}

void PhraseTable::add(std::string_view source, std::string_view target) {
    auto key = split_whitespace(source);
    if (key.empty()) {
        throw ValueError("phrase table source phrase is empty");
    }
    max_tokens_ = std::max(max_tokens_, key.size());
    table_[std::move(key)] = join_tokens(split_whitespace(target));
}

std::string PhraseTable::apply(std::string_view text) const {
    const auto tokens = split_whitespace(text);
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < tokens.size()) {
        bool matched = false;
        const auto longest = std::min(max_tokens_, tokens.size() - i);
        for (std::size_t len = longest; len >= 1; --len) {
            std::vector<std::string> key(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                         tokens.begin() + static_cast<std::ptrdiff_t>(i + len));
            const auto it = table_.find(key);
            if (it != table_.end()) {
                if (!it->second.empty()) {
                    out.push_back(it->second);
                }
                i += len;
                matched = true;
                break;
            }
        }
        if (!matched) {
            out.push_back(tokens[i++]);
        }
    }
    return join_tokens(out);
}

SynonymLexicon read_lexicon(std::istream& in, const std::string& source_name) {
    SynonymLexicon lex;
    for_each_line(in, [&](const std::string& line, std::size_t line_no) {
        const auto cols = split(line, '\t');
        if (cols.size() != 2) {
            throw FormatError(where(source_name, line_no) + ": expected word<TAB>syn1|syn2|...");
        }
        const auto word = trim(cols[0]);
        std::vector<std::string> syns;
        for (const auto& s : split(cols[1], '|')) {
            auto t = trim(s);
            if (t.empty()) {
                continue;
            }
            if (t == word) {
                throw ValueError(where(source_name, line_no) + ": '" + word + "' lists itself as a synonym");
            }
            syns.push_back(std::move(t));
        }
        if (word.empty() || syns.empty()) {
            throw FormatError(where(source_name, line_no) + ": empty word or synonym list");
        }
        lex.entries[word] = std::move(syns);
    });
    return lex;
}

ReservedClasses read_reserved_classes(std::istream& in, const std::string& source_name) {
    std::vector<std::vector<std::string>> classes;
    for_each_line(in, [&](const std::string& line, std::size_t line_no) {
        std::vector<std::string> members;
        for (const auto& m : split(line, ',')) {
            auto t = trim(m);
            if (t.empty()) {
                throw FormatError(where(source_name, line_no) + ": empty class member");
            }
            members.push_back(std::move(t));
        }
        classes.push_back(std::move(members));
    });
    try {
        return make_reserved_classes(std::move(classes));
    } catch (const ValueError& e) {
        throw ValueError(source_name + ": " + e.what());
    }
}

VerbMap read_verb_map(std::istream& in, const std::string& source_name) {
    VerbMap vm;
    for_each_line(in, [&](const std::string& line, std::size_t line_no) {
        const auto cols = split(line, '\t');
        if (cols.size() == 1) {
            vm.regular.insert(trim(cols[0]));
        } else if (cols.size() == 2) {
            auto present = trim(cols[0]);
            auto past = trim(cols[1]);
            if (present.empty() || past.empty()) {
                throw FormatError(where(source_name, line_no) + ": empty verb form");
            }
            vm.irregular[std::move(present)] = std::move(past);
        } else {
            throw FormatError(where(source_name, line_no) + ": expected present<TAB>past or a bare verb");
        }
    });
    return vm;
}

PhraseTable read_phrase_table(std::istream& in, const std::string& source_name) {
    PhraseTable table;
    for_each_line(in, [&](const std::string& line, std::size_t line_no) {
        const auto cols = split(line, '\t');
        if (cols.size() != 2) {
            throw FormatError(where(source_name, line_no) + ": expected source<TAB>target");
        }
        table.add(cols[0], cols[1]);
    });
    return table;
}

SynonymLexicon load_lexicon(const std::filesystem::path& path) {
    return load_with<SynonymLexicon>(path, read_lexicon);
}

ReservedClasses load_reserved_classes(const std::filesystem::path& path) {
    return load_with<ReservedClasses>(path, read_reserved_classes);
}

VerbMap load_verb_map(const std::filesystem::path& path) { return load_with<VerbMap>(path, read_verb_map); }

PhraseTable load_phrase_table(const std::filesystem::path& path) {
    return load_with<PhraseTable>(path, read_phrase_table);
}

const SynonymLexicon& default_lexicon() {
    static const auto lex = parse_builtin<SynonymLexicon>(kDefaultLexicon, read_lexicon, "<builtin lexicon>");
    return lex;
}

const ReservedClasses& default_reserved_classes() {
    static const auto rc =
        parse_builtin<ReservedClasses>(kDefaultReserved, read_reserved_classes, "<builtin reserved>");
    return rc;
}

const VerbMap& default_verb_map() {
    static const auto vm = parse_builtin<VerbMap>(kDefaultVerbs, read_verb_map, "<builtin verbs>");
    return vm;
}

const PhraseTable& default_en_de_table() {
    static const auto t = parse_builtin<PhraseTable>(kDefaultEnDe, read_phrase_table, "<builtin en-de>");
    return t;
}

const PhraseTable& default_de_en_table() {
    static const auto t = parse_builtin<PhraseTable>(kDefaultDeEn, read_phrase_table, "<builtin de-en>");
    return t;
}

}  // namespace rdaug
