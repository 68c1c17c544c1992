#include "taxo/stemmer.hpp"

#include <cstring>

namespace taxo {

namespace {

// Working buffer for one word. b[0..k] is the current word, j marks the
// stem end after a suffix match.
struct Stemmer {
    std::string b;
    long k = -1;
    long j = 0;

    bool cons(long i) const {
        switch (b[static_cast<size_t>(i)]) {
            case 'a': case 'e': case 'i': case 'o': case 'u':
                return false;
            case 'y':
                return i == 0 ? true : !cons(i - 1);
            default:
                return true;
        }
    }

    // number of VC sequences in b[0..j]
    int m() const {
        int n = 0;
        long i = 0;
        for (;;) {
            if (i > j) return n;
            if (!cons(i)) break;
            ++i;
        }
        ++i;
        for (;;) {
            for (;;) {
                if (i > j) return n;
                if (cons(i)) break;
                ++i;
            }
            ++i;
            ++n;
            for (;;) {
                if (i > j) return n;
                if (!cons(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool vowel_in_stem() const {
        for (long i = 0; i <= j; ++i)
            if (!cons(i)) return true;
        return false;
    }

    bool doublec(long i) const {
        if (i < 1) return false;
        if (b[static_cast<size_t>(i)] != b[static_cast<size_t>(i - 1)]) return false;
        return cons(i);
    }

    // cvc at i, final consonant not w, x or y
    bool cvc(long i) const {
        if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
        const char ch = b[static_cast<size_t>(i)];
        return ch != 'w' && ch != 'x' && ch != 'y';
    }

    bool ends(const char* s) {
        const long len = static_cast<long>(std::strlen(s));
        if (len > k + 1) return false;
        if (b.compare(static_cast<size_t>(k + 1 - len), static_cast<size_t>(len), s) != 0)
            return false;
        j = k - len;
        return true;
    }

    void setto(const char* s) {
        const long len = static_cast<long>(std::strlen(s));
        b.replace(static_cast<size_t>(j + 1), static_cast<size_t>(k - j), s);
        k = j + len;
    }

    void r(const char* s) {
        if (m() > 0) setto(s);
    }

    void step1ab() {
        if (b[static_cast<size_t>(k)] == 's') {
            if (ends("sses")) k -= 2;
            else if (ends("ies")) setto("i");
            else if (b[static_cast<size_t>(k - 1)] != 's') --k;
        }
        if (ends("eed")) {
            if (m() > 0) --k;
        } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
            k = j;
            if (ends("at")) setto("ate");
            else if (ends("bl")) setto("ble");
            else if (ends("iz")) setto("ize");
            else if (doublec(k)) {
                --k;
                const char ch = b[static_cast<size_t>(k)];
                if (ch == 'l' || ch == 's' || ch == 'z') ++k;
            } else if (m() == 1 && cvc(k)) setto("e");
        }
    }

    void step1c() {
        if (ends("y") && vowel_in_stem()) b[static_cast<size_t>(k)] = 'i';
    }

    void step2() {
        switch (b[static_cast<size_t>(k - 1)]) {
            case 'a':
                if (ends("ational")) { r("ate"); break; }
                if (ends("tional")) { r("tion"); break; }
                break;
            case 'c':
                if (ends("enci")) { r("ence"); break; }
                if (ends("anci")) { r("ance"); break; }
                break;
            case 'e':
                if (ends("izer")) { r("ize"); break; }
                break;
            case 'l':
                if (ends("abli")) { r("able"); break; }
                if (ends("alli")) { r("al"); break; }
                if (ends("entli")) { r("ent"); break; }
                if (ends("eli")) { r("e"); break; }
                if (ends("ousli")) { r("ous"); break; }
                break;
            case 'o':
                if (ends("ization")) { r("ize"); break; }
                if (ends("ation")) { r("ate"); break; }
                if (ends("ator")) { r("ate"); break; }
                break;
            case 's':
                if (ends("alism")) { r("al"); break; }
                if (ends("iveness")) { r("ive"); break; }
                if (ends("fulness")) { r("ful"); break; }
                if (ends("ousness")) { r("ous"); break; }
                break;
            case 't':
                if (ends("aliti")) { r("al"); break; }
                if (ends("iviti")) { r("ive"); break; }
                if (ends("biliti")) { r("ble"); break; }
                break;
            default:
                break;
        }
    }

    void step3() {
        switch (b[static_cast<size_t>(k)]) {
            case 'e':
                if (ends("icate")) { r("ic"); break; }
                if (ends("ative")) { r(""); break; }
                if (ends("alize")) { r("al"); break; }
                break;
            case 'i':
                if (ends("iciti")) { r("ic"); break; }
                break;
            case 'l':
                if (ends("ical")) { r("ic"); break; }
                if (ends("ful")) { r(""); break; }
                break;
            case 's':
                if (ends("ness")) { r(""); break; }
                break;
            default:
                break;
        }
    }

    void step4() {
        switch (b[static_cast<size_t>(k - 1)]) {
            case 'a': if (ends("al")) break; return;
            case 'c': if (ends("ance")) break; if (ends("ence")) break; return;
            case 'e': if (ends("er")) break; return;
            case 'i': if (ends("ic")) break; return;
            case 'l': if (ends("able")) break; if (ends("ible")) break; return;
            case 'n':
                if (ends("ant")) break;
                if (ends("ement")) break;
                if (ends("ment")) break;
                if (ends("ent")) break;
                return;
            case 'o':
                if (ends("ion") && j >= 0 &&
                    (b[static_cast<size_t>(j)] == 's' || b[static_cast<size_t>(j)] == 't'))
                    break;
                if (ends("ou")) break;
                return;
            case 's': if (ends("ism")) break; return;
            case 't': if (ends("ate")) break; if (ends("iti")) break; return;
            case 'u': if (ends("ous")) break; return;
            case 'v': if (ends("ive")) break; return;
            case 'z': if (ends("ize")) break; return;
            default: return;
        }
        if (m() > 1) k = j;
    }

    void step5() {
        j = k;
        if (b[static_cast<size_t>(k)] == 'e') {
            const int a = m();
            if (a > 1 || (a == 1 && !cvc(k - 1))) --k;
        }
        if (b[static_cast<size_t>(k)] == 'l' && doublec(k) && m() > 1) --k;
    }
};

} // namespace

std::string porter_stem(std::string_view word) {
    if (word.size() <= 2) return std::string(word);
    Stemmer s;
    s.b = std::string(word);
    s.k = static_cast<long>(word.size()) - 1;
    s.step1ab();
    s.step1c();
    s.step2();
    s.step3();
    s.step4();
    s.step5();
    s.b.resize(static_cast<size_t>(s.k + 1));
    return s.b;
}

} // namespace taxo
