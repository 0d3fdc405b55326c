#include "discourse/fixtures.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace discourse::fixtures {

namespace {

const char* const kTimelineJson = R"fixture({
  "critical_event": "In late April 2025 Dublin saw one of the largest anti-immigration demonstrations in years: a march from the Garden of Remembrance to the Custom House, with thousands protesting over immigration levels and pressure on housing and public services. Marchers carried slogans including 'Ireland is Full' and 'Get Them Out', and a counter-demonstration gathered under a 'United Against Racism' banner. The march followed months of tension over asylum accommodation, including arson threats at proposed centres, and it has dominated national media coverage since.",
  "entries": [
    {
      "day": 0,
      "date": "2025-04-26",
      "text": "Thousands march through central Dublin from the Garden of Remembrance to the Custom House protesting immigration levels, with chants of 'Ireland is full' and 'get them out'. Gardai report a largely peaceful crowd with isolated scuffles.",
      "evidence": "verified"
    },
    {
      "day": 1,
      "date": "2025-04-27",
      "text": "A counter-demonstration gathers at the GPO under a united-against-racism banner, with speakers calling for solidarity with refugee families and respect for asylum seekers' rights.",
      "evidence": "verified"
    },
    {
      "day": 2,
      "date": "2025-04-28",
      "text": "Politicians trade blame over housing pressure as commentators link the march to wider public anger; community liaison officers warn of a danger of escalation around accommodation sites.",
      "evidence": "contextually_supported"
    },
    {
      "day": 3,
      "date": "2025-04-29",
      "text": "An arson attack damages a building earmarked for asylum seeker accommodation in the midlands; no injuries are reported and Gardai appeal for witnesses.",
      "evidence": "verified"
    },
    {
      "day": 4,
      "date": "2025-04-30",
      "text": "The government announces a review of accommodation security while opposition figures demand faster deportation of failed applicants; march organisers promise further rallies.",
      "evidence": "verified"
    },
    {
      "day": 5,
      "date": "2025-05-01",
      "text": "May Day rallies across the city fold the immigration question into wider housing demands; community groups hand out leaflets urging compassion for families waiting in emergency shelter.",
      "evidence": "contextually_supported"
    },
    {
      "day": 6,
      "date": "2025-05-02",
      "text": "Online channels amplify unverified claims of crime linked to new arrivals; fact-checkers find no Garda record matching the viral posts.",
      "evidence": "inferred"
    },
    {
      "day": 7,
      "date": "2025-05-03",
      "text": "A man is charged over violence at the edge of last week's march; the court hears he shouted at counter-protesters before an attack on a steward.",
      "evidence": "verified"
    },
    {
      "day": 8,
      "date": "2025-05-04",
      "text": "Weekend coverage shifts to profiles of refugee children enrolled in local schools, with teachers describing quiet solidarity from classmates.",
      "evidence": "contextually_supported"
    },
    {
      "day": 9,
      "date": "2025-05-05",
      "text": "The department confirms processing times have lengthened, leaving thousands waiting on first decisions; NGOs say the backlog erodes applicants' rights.",
      "evidence": "verified"
    },
    {
      "day": 10,
      "date": "2025-05-06",
      "text": "A second march is announced for mid-May; organisers repeat calls to 'get them out' while councillors warn of danger to community relations.",
      "evidence": "contextually_supported"
    },
    {
      "day": 11,
      "date": "2025-05-07",
      "text": "Rumours circulate that a disused hotel will be converted for asylum housing; a residents' group plans a public meeting, and some online posts call for deportation first.",
      "evidence": "inferred"
    },
    {
      "day": 12,
      "date": "2025-05-08",
      "text": "Gardai increase patrols near accommodation centres after another arson scare; the minister condemns what she calls a campaign of intimidation against staff.",
      "evidence": "verified"
    },
    {
      "day": 13,
      "date": "2025-05-09",
      "text": "Faith leaders hold a vigil for asylum seekers, reading letters from refugee families; speakers appeal for compassion and an end to the violence of recent weeks.",
      "evidence": "verified"
    },
    {
      "day": 14,
      "date": "2025-05-10",
      "text": "Two weeks on, attention moves to the government's promised accommodation plan; polling suggests hardened views on both sides, with many still waiting for detail.",
      "evidence": "contextually_supported"
    }
  ]
})fixture";

const char* const kNewsSnippetsJson = R"fixture({
  "0": "Live updates: crowds estimated in the tens of thousands move along the quays; organisers claim a historic turnout while Gardai maintain a visible presence around the Custom House.",
  "1": "Counter-rally at the GPO draws union branches, student groups and NGO volunteers; speakers stress that newcomers are neighbours, workers and classmates.",
  "2": "Analysis: housing shortfall, not migration alone, drives the anger on display this week, economists argue, as ministers scramble to respond.",
  "3": "Breaking: fire brigade confirms a blaze at a midlands property linked to asylum accommodation plans; investigators on site through the morning.",
  "4": "Political correspondents report cabinet tensions over enforcement policy; backbenchers push for visible action before summer recess.",
  "5": "May Day marches blend labour demands with housing protests; charity stalls collect donations for families in emergency accommodation.",
  "6": "Fact-check: viral posts alleging a crime wave near reception centres do not match official statistics, which show no local increase.",
  "7": "Court report: accused remanded on bail over march-day assault; judge notes heightened public feeling around the case.",
  "8": "Feature: a school in Dublin 7 pairs newly arrived pupils with local buddies; principal says the scheme has calmed playground tensions.",
  "9": "Data desk: first-decision waiting times now average 19 months, the longest on record, departmental figures show.",
  "10": "Organisers file notice for a follow-up demonstration; city councillors call for calm and stewarding commitments.",
  "11": "Local radio hosts a heated phone-in on the rumoured hotel conversion; officials decline to confirm any site decision.",
  "12": "Regional desk: patrols stepped up at accommodation centres; staff association reports a rise in abusive calls.",
  "13": "A candlelit vigil fills the square outside the cathedral; organisers read testimonies from families in the protection system.",
  "14": "Week in review: the accommodation plan is promised within the month; pollsters note entrenched positions and a fatigued public."
})fixture";

} // namespace

const std::string& timeline_json() {
    static const std::string text = kTimelineJson;
    return text;
}

const std::string& news_snippets_json() {
    static const std::string text = kNewsSnippetsJson;
    return text;
}

std::string lexicon_json() {
    const Lexicon lex = default_lexicon();
    nlohmann::json doc;
    doc["threat_terms"] = lex.threat_terms;
    doc["humanitarian_terms"] = lex.humanitarian_terms;
    doc["pro_terms"] = lex.pro_terms;
    doc["anti_terms"] = lex.anti_terms;
    doc["economic_terms"] = lex.economic_terms;
    doc["cultural_terms"] = lex.cultural_terms;
    doc["longest_match_only"] = lex.longest_match_only;
    return doc.dump(2) + "\n";
}

Timeline default_timeline() {
    return parse_timeline(timeline_json());
}

std::unordered_map<std::size_t, std::string> parse_news_fixture(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw LoadError(std::string("news fixture: ") + e.what());
    }
    if (!doc.is_object()) throw LoadError("news fixture: expected a JSON object");
    std::unordered_map<std::size_t, std::string> snippets;
    for (const auto& [key, value] : doc.items()) {
        std::size_t day = 0;
        try {
            day = static_cast<std::size_t>(std::stoull(key));
        } catch (const std::exception&) {
            throw LoadError("news fixture: key \"" + key + "\" is not a day index");
        }
        if (!value.is_string()) {
            throw LoadError("news fixture: value for day " + key + " must be a string");
        }
        snippets[day] = value.get<std::string>();
    }
    return snippets;
}

std::unordered_map<std::size_t, std::string> load_news_fixture(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_news_fixture(buf.str());
    } catch (const LoadError& e) {
        throw LoadError(path + ": " + e.what());
    }
}

std::unordered_map<std::size_t, std::string> default_news_fixture() {
    return parse_news_fixture(news_snippets_json());
}

} // namespace discourse::fixtures
