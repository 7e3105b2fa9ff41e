#!/usr/bin/env python3
"""Regenerate the pinned replay fixture stores (corpus + walkthrough).

Responses are authored here per corpus entry and recorded through the real
pipeline, so the stored request keys match exactly what a replay run renders.
Run from the repo root:

    python3 tools/author_fixtures.py

Rerun after any change to prompt templates or context blocks, then commit the
refreshed stores under src/intentflow/data/fixtures/.
"""

from __future__ import annotations

import json
import re
import shutil
import sys
from dataclasses import dataclass, field
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from intentflow.bench.checks import (  # noqa: E402
    CheckConfig,
    check_q1_goal,
    check_q2_intent_count,
    check_q3_distinctiveness,
    check_q4_intent_relevance,
    check_q5_dimension_relevance,
    check_q6_ui_wellformed,
    check_q7_values,
    check_q8_links,
)
from intentflow.bench.corpus import load_shipped_corpus  # noqa: E402
from intentflow.core import SetSlider, ToggleKeep, new_session  # noqa: E402
from intentflow.gateway import (  # noqa: E402
    CompletionRequest,
    FixtureStore,
    Gateway,
    ModuleKind,
    ProviderConfig,
    RecordingProvider,
)
from intentflow.pipeline import plan_regeneration, run_turn  # noqa: E402

FIXTURES = REPO / "src" / "intentflow" / "data" / "fixtures"


# ---------------------------------------------------------------------------
# Authoring model: per-turn scripts expanded from compact entry specs
# ---------------------------------------------------------------------------


@dataclass
class TurnScript:
    entrypoint: dict | None = None
    goal: dict | None = None
    intents: list[dict] | None = None
    dimensions: list[dict] | None = None
    sections: list[dict] | None = None
    quotes: dict[str, list[str]] = field(default_factory=dict)


class AuthorProvider:
    """Deterministic stand-in for the remote model while recording fixtures."""

    LINK_RE = re.compile(r"PANEL ITEM \((?P<label>[^)]*)\):\n(?P<text>.*?)\n\nQuote", re.DOTALL)

    def __init__(self):
        self.script: TurnScript | None = None

    def complete(self, request: CompletionRequest) -> str:
        script = self.script
        assert script is not None, "no turn script active"
        kind = request.kind
        if kind is ModuleKind.ENTRYPOINT:
            assert script.entrypoint, "entrypoint consulted without a script"
            return json.dumps(script.entrypoint)
        if kind is ModuleKind.GOAL:
            assert script.goal
            return json.dumps(script.goal)
        if kind is ModuleKind.INTENT:
            assert script.intents
            return json.dumps({"intents": script.intents})
        if kind is ModuleKind.DIMENSION:
            assert script.dimensions
            return json.dumps({"dimensions": script.dimensions})
        if kind is ModuleKind.OUTPUT:
            assert script.sections
            return json.dumps({"sections": script.sections})
        match = self.LINK_RE.search(request.messages[0][1])
        assert match, "linking prompt did not carry a panel item"
        source_text = match.group("text")
        for key, quotes in script.quotes.items():
            if source_text.startswith(key):
                return json.dumps({"quotes": quotes})
        return json.dumps({"quotes": []})


def slider(title: str, initial: int, levels: tuple[str, str, str, str, str]) -> dict:
    return {
        "title": title,
        "ui_kind": "slider",
        "domain": [],
        "initial": initial,
        "descriptions": {str(i + 1): text for i, text in enumerate(levels)},
    }


def radio(title: str, options: list[str], initial: str, descriptions: dict[str, str]) -> dict:
    return {
        "title": title,
        "ui_kind": "radio",
        "domain": options,
        "initial": initial,
        "descriptions": descriptions,
    }


def tags(title: str, initial: list[str], descriptions: dict[str, str]) -> dict:
    return {
        "title": title,
        "ui_kind": "hashtag",
        "domain": [],
        "initial": initial,
        "descriptions": descriptions,
    }


@dataclass
class EntrySpec:
    """Compact authoring spec for one corpus entry's first turn."""

    reply: str
    goal: tuple[str, str, str]
    intents: list[tuple[str, float, int]]  # (text, salience, sentence index)
    dimensions: list[dict]
    dimension_quotes: dict[str, int]  # "Title = value" -> sentence index
    sections: list[tuple[str | None, list[int]]]
    sentences: list[str]

    def script(self) -> TurnScript:
        quotes: dict[str, list[str]] = {}
        for text, _, sentence in self.intents:
            quotes[text] = [self.sentences[sentence]]
        for key, sentence in self.dimension_quotes.items():
            quotes[key] = [self.sentences[sentence]]
        return TurnScript(
            entrypoint={
                "reply": self.reply,
                "invoke": ["goal", "intent", "dimension", "output"],
                "provisional_kind": "Add",
            },
            goal={
                "task_goal": self.goal[0],
                "writing_domain": self.goal[1],
                "topic": self.goal[2],
            },
            intents=[{"text": text, "salience": salience} for text, salience, _ in self.intents],
            dimensions=self.dimensions,
            sections=[
                {"header": header, "body": " ".join(self.sentences[i] for i in indices)}
                for header, indices in self.sections
            ],
            quotes=quotes,
        )


LEVELS_DETAIL = (
    "Bare minimum: a single summary statement.",
    "Light coverage with one example.",
    "Moderate coverage: each point gets a short explanation.",
    "Thorough coverage: each point is explained and supported.",
    "Exhaustive coverage with full supporting material.",
)

LEVELS_LENGTH = (
    "A few sentences only.",
    "One tight paragraph.",
    "Several short paragraphs covering the core.",
    "A full treatment with supporting paragraphs.",
    "Long-form: every aspect developed in depth.",
)


ESSAY = EntrySpec(
    reply="I extracted your goal and intents for the essay and set up adjustable dimensions; drafting now.",
    goal=(
        "Write a formal argumentative essay on whether online education is more effective than traditional classroom education",
        "academic essay writing",
        "online education versus traditional classroom education",
    ),
    intents=[
        ("State a clear thesis on the effectiveness of online education", 0.95, 0),
        ("Support the argument with at least three evidence-backed points", 0.9, 1),
        ("Address one counterargument fairly before rebutting it", 0.85, 2),
        ("Maintain a formal academic tone throughout the essay", 0.8, 3),
    ],
    dimensions=[
        slider("Evidence Detail", 4, LEVELS_DETAIL),
        radio(
            "Essay Stance",
            ["For online education", "Balanced", "For classroom education"],
            "Balanced",
            {
                "For online education": "Argues online delivery wins outright.",
                "Balanced": "Grants classroom education real advantages before concluding.",
                "For classroom education": "Argues the classroom remains more effective.",
            },
        ),
        tags(
            "Academic Tone Markers",
            ["#formal", "#objective"],
            {
                "#formal": "No contractions, hedged claims, third person.",
                "#objective": "Evidence carries the argument; no emotional appeals.",
            },
        ),
    ],
    dimension_quotes={"Evidence Detail = 4": 4, "Essay Stance = Balanced": 5, "Academic Tone Markers = #formal": 3, "Academic Tone Markers = #objective": 3},
    sections=[
        ("Thesis", [0]),
        ("Arguments and Evidence", [1, 4]),
        ("Counterargument and Register", [2, 5, 3]),
    ],
    sentences=[
        "Online education can match traditional classrooms when course design is deliberate, and this essay argues that claim in three steps.",
        "Meta-analyses of blended courses, completion statistics, and employer surveys provide three independent lines of evidence.",
        "Critics object that screen-mediated learning erodes discussion, a counterargument the essay addresses before rebutting.",
        "The register stays formal and academic, avoiding contractions and colloquial phrasing.",
        "Each claim is weighed against published findings before the essay takes a side.",
        "The essay holds a balanced stance, granting classroom education its genuine advantages.",
    ],
)

PROPOSAL = EntrySpec(
    reply="Goal, intents, and dimensions for the research proposal are set; generating the draft.",
    goal=(
        "Write a formally structured research proposal on how social media usage affects student academic performance",
        "academic research writing",
        "social media usage and student academic performance",
    ),
    intents=[
        ("State the research objective up front", 0.95, 0),
        ("Review factors that may link social media usage to academic performance", 0.9, 1),
        ("Propose a concrete methodology for the study", 0.85, 2),
        ("Describe expected outcomes and their significance", 0.8, 3),
    ],
    dimensions=[
        slider("Methodology Detail", 4, LEVELS_DETAIL),
        radio(
            "Research Design",
            ["Survey study", "Longitudinal study", "Mixed methods"],
            "Mixed methods",
            {
                "Survey study": "One-shot questionnaire across a large sample.",
                "Longitudinal study": "Tracks the same students across semesters.",
                "Mixed methods": "Pairs quantitative logs with interviews.",
            },
        ),
        tags(
            "Proposal Style Tags",
            ["#formal", "#structured"],
            {
                "#formal": "Academic register throughout.",
                "#structured": "Conventional objective-to-outcomes section order.",
            },
        ),
    ],
    dimension_quotes={
        "Methodology Detail = 4": 4,
        "Research Design = Mixed methods": 2,
        "Proposal Style Tags = #formal": 5,
        "Proposal Style Tags = #structured": 5,
    },
    sections=[
        ("Objective", [0]),
        ("Background and Design", [1, 2]),
        ("Method and Outcomes", [4, 3, 5]),
    ],
    sentences=[
        "This proposal investigates how daily social media usage shapes the academic performance of university students.",
        "Prior work points to sleep displacement, attention fragmentation, and peer support as potentially related factors.",
        "A mixed-methods design pairs a semester-long activity log with focus-group interviews.",
        "We expect moderate negative correlations that weaken once study habits are controlled for.",
        "Sampling, instruments, and analysis steps are specified in enough detail to be replicated.",
        "The document keeps the conventional proposal structure from objective through expected outcomes.",
    ],
)

POEM = EntrySpec(
    reply="I read the prompt as a poetry task; intents and dimensions are set, composing the poem.",
    goal=(
        "Write a free verse poem evoking solitude during a walk in a dense forest",
        "creative poetry",
        "solitude while walking alone in a dense forest",
    ),
    intents=[
        ("Evoke solitude as a felt atmosphere rather than naming it", 0.95, 0),
        ("Use vivid sensory imagery from the forest floor to the canopy", 0.9, 1),
        ("Build metaphors that carry the emotion of walking alone", 0.85, 2),
        ("Keep the verse free of rhyme and fixed meter", 0.8, 3),
    ],
    dimensions=[
        slider(
            "Imagery Density",
            4,
            (
                "Spare: one image per stanza.",
                "Restrained imagery with room to breathe.",
                "Even mix of image and statement.",
                "Image-forward: most lines carry a sensory detail.",
                "Saturated: stacked images throughout.",
            ),
        ),
        radio(
            "Poem Emotion",
            ["Quiet awe", "Melancholy", "Unease"],
            "Quiet awe",
            {
                "Quiet awe": "Wonder folded inside stillness.",
                "Melancholy": "Loss shading every observation.",
                "Unease": "The forest watches back.",
            },
        ),
        tags(
            "Sensory Focus Tags",
            ["#sound", "#light"],
            {
                "#sound": "Hush, footfall, and distant birdcall carry the scene.",
                "#light": "What the canopy does to daylight structures the images.",
            },
        ),
    ],
    dimension_quotes={
        "Imagery Density = 4": 4,
        "Poem Emotion = Quiet awe": 5,
        "Sensory Focus Tags = #sound": 6,
        "Sensory Focus Tags = #light": 6,
    },
    sections=[
        (None, [0, 1]),
        (None, [2, 6]),
        (None, [4, 5, 3]),
    ],
    sentences=[
        "The hush arrives before the clearing does, and no one is there to share it.",
        "Moss swallows each footstep; cold resin sharpens the air between the pines.",
        "The path is a gray thread a slow needle pulls through the dark cloth of firs.",
        "Lines break where breath breaks, unrhymed, unmetered, loose as litterfall.",
        "Image is stacked on image until the forest is more texture than place.",
        "The poem keeps a register of quiet awe, wonder folded inside stillness.",
        "What little light survives the canopy lands in coins of glow and birdsong.",
    ],
)

FICTION = EntrySpec(
    reply="Story goal and intents captured; dimensions set for suspense and perspective. Writing the opening.",
    goal=(
        "Write a short suspenseful story about a mysterious letter with no return address",
        "creative fiction",
        "a mysterious letter that arrives without a sender",
    ),
    intents=[
        ("Open with the letter's arrival and its missing return address", 0.95, 0),
        ("Build suspense through pacing and withheld information", 0.9, 4),
        ("Show the character's emotional response to the cryptic message", 0.85, 2),
        ("Ground each scene in concrete sensory description", 0.8, 3),
    ],
    dimensions=[
        slider(
            "Suspense Level",
            5,
            (
                "Gentle intrigue only.",
                "A question hangs over each scene.",
                "Tension rises scene over scene.",
                "Withheld facts and hard scene breaks.",
                "Maximum tension: every paragraph ends on an open hook.",
            ),
        ),
        radio(
            "Story Perspective",
            ["First person", "Third person limited"],
            "Third person limited",
            {
                "First person": "The reader is locked inside the protagonist's head.",
                "Third person limited": "Close narration from just behind the protagonist.",
            },
        ),
        tags(
            "Scene Mood Tags",
            ["#uncanny", "#rain"],
            {
                "#uncanny": "Ordinary objects carry a wrong note.",
                "#rain": "Weather keeps the world emptied and echoing.",
            },
        ),
    ],
    dimension_quotes={
        "Suspense Level = 5": 4,
        "Story Perspective = Third person limited": 5,
        "Scene Mood Tags = #uncanny": 6,
        "Scene Mood Tags = #rain": 6,
    },
    sections=[
        ("The Letter", [0, 1]),
        ("The Reader", [2, 5]),
        ("The Journey", [4, 3, 6]),
    ],
    sentences=[
        "The envelope was waiting on the mat, water-stained, with no return address.",
        "Mara read the single line twice before the kettle finished: COME BACK BEFORE THE TWELFTH.",
        "Her hands were steady; it was her breathing that betrayed her.",
        "The station clock, the vinegar smell of old paper, the cold brass of the locker key: every scene is built from touchable detail.",
        "Information arrives one withheld fact at a time, tightening the suspense until the platform scene.",
        "The narration stays close behind Mara's shoulder, third person and limited.",
        "Rain keeps the streets empty and sets the windows talking in their frames.",
    ],
)

NEWS = EntrySpec(
    reply="News goal and intents extracted; dimensions set for detail and angle. Drafting the article.",
    goal=(
        "Write an objective news article on a local community's zero-waste initiative launch",
        "journalistic news writing",
        "local community zero-waste initiative launch",
    ),
    intents=[
        ("Lead with a clear headline and an engaging first paragraph", 0.95, 1),
        ("Report factual details of the zero-waste initiative", 0.9, 2),
        ("Quote key people involved in the launch", 0.85, 3),
        ("Keep the style objective and informative", 0.8, 6),
    ],
    dimensions=[
        slider("Factual Detail", 4, LEVELS_DETAIL),
        radio(
            "Article Angle",
            ["Community impact", "Policy context", "Business response"],
            "Community impact",
            {
                "Community impact": "Follows households and volunteers.",
                "Policy context": "Frames the launch inside county policy.",
                "Business response": "Centers local merchants' adaptation.",
            },
        ),
        tags(
            "Journalistic Style Tags",
            ["#objective", "#concise"],
            {
                "#objective": "Sourced claims, no editorializing.",
                "#concise": "Short sentences, tight paragraphs.",
            },
        ),
    ],
    dimension_quotes={
        "Factual Detail = 4": 4,
        "Article Angle = Community impact": 5,
        "Journalistic Style Tags = #objective": 6,
        "Journalistic Style Tags = #concise": 6,
    },
    sections=[
        ("Headline", [0]),
        ("The Launch", [1, 2, 3]),
        ("Method and Angle", [4, 5, 6]),
    ],
    sentences=[
        "Greenfield Goes Zero: Riverside District Launches the County's First Zero-Waste Initiative.",
        "Residents dropped off their first sorted bins at dawn on Saturday as the initiative went live.",
        "The program adds four refill stations, a repair cafe, and weekly compost pickup across twelve blocks.",
        "\"We are done sending our street's waste across the county,\" organizer Dana Reyes said at the launch.",
        "Figures from the pilot month, including 38 percent less landfill tonnage, anchor every factual claim.",
        "Coverage stays with the community angle, following households rather than city hall.",
        "Sentences stay short, sourced, and free of editorializing.",
    ],
)

EXPLAINER = EntrySpec(
    reply="Explainer goal and intents extracted; dimensions set for analogies and level. Writing it now.",
    goal=(
        "Explain how photosynthesis works in a way accessible to high school students",
        "science explanation writing",
        "how photosynthesis works",
    ),
    intents=[
        ("Break photosynthesis into key steps and components", 0.95, 1),
        ("Use clear language a high school student can follow", 0.9, 5),
        ("Offer relatable analogies for abstract processes", 0.85, 3),
        ("Define each scientific term about photosynthesis at first use", 0.8, 4),
    ],
    dimensions=[
        slider(
            "Relatable Analogies",
            3,
            (
                "No analogies; plain exposition.",
                "One anchoring analogy for the whole piece.",
                "About one analogy per section.",
                "An analogy for every major concept.",
                "Analogy-first: every step introduced through comparison.",
            ),
        ),
        radio(
            "Student Level",
            ["Grade 9-10", "Grade 11-12", "AP Biology"],
            "Grade 9-10",
            {
                "Grade 9-10": "Core mechanism, minimal chemistry notation.",
                "Grade 11-12": "Adds electron transport details.",
                "AP Biology": "Full light-dependent and Calvin cycle treatment.",
            },
        ),
        tags(
            "Language Style Tags",
            ["#clear", "#friendly"],
            {
                "#clear": "Short sentences, concrete verbs.",
                "#friendly": "Warm, direct address without baby talk.",
            },
        ),
    ],
    dimension_quotes={
        "Relatable Analogies = 3": 6,
        "Student Level = Grade 9-10": 5,
        "Language Style Tags = #clear": 7,
        "Language Style Tags = #friendly": 7,
    },
    sections=[
        ("What Photosynthesis Does", [0, 3]),
        ("The Two Steps", [1, 2, 6]),
        ("How It Reads", [4, 5, 7]),
    ],
    sentences=[
        "Photosynthesis is how green plants turn sunlight, water, and carbon dioxide into sugar and oxygen.",
        "Step one happens in the thylakoid membranes, where light energy splits water and charges up ATP.",
        "Step two, the Calvin cycle, spends that stored energy to stitch carbon dioxide into glucose.",
        "Think of the chloroplast as a solar-powered kitchen: panels on the roof, recipes in the pantry.",
        "Every term, from chloroplast to ATP, is defined in plain words the first time it appears.",
        "Each step gets a short, concrete walkthrough pitched at grade nine and ten.",
        "Analogies appear about once per section, enough to anchor the ideas without clutter.",
        "The wording stays clear and friendly from the first line to the last.",
    ],
)

REPORT = EntrySpec(
    reply="Report goal and intents extracted; dimensions set for detail and audience. Assembling the report.",
    goal=(
        "Write a formally organized technical report on smartphone battery life under different usage conditions",
        "technical report writing",
        "smartphone battery life testing",
    ),
    intents=[
        ("State the objective of the battery evaluation", 0.95, 0),
        ("Describe the testing methodology per usage condition", 0.9, 1),
        ("Report key findings such as average battery drain rate", 0.85, 2),
        ("List identified issues and suggestions to optimize battery usage", 0.8, 3),
    ],
    dimensions=[
        slider("Methodology Detail", 4, LEVELS_DETAIL),
        radio(
            "Report Audience",
            ["Engineering team", "Product management", "General readers"],
            "Engineering team",
            {
                "Engineering team": "Full instrumentation and units.",
                "Product management": "Findings first, method summarized.",
                "General readers": "Plain-language summary with one table.",
            },
        ),
        tags(
            "Formal Language Tags",
            ["#precise", "#neutral"],
            {
                "#precise": "Quantified statements with units.",
                "#neutral": "No marketing language anywhere.",
            },
        ),
    ],
    dimension_quotes={
        "Methodology Detail = 4": 4,
        "Report Audience = Engineering team": 5,
        "Formal Language Tags = #precise": 6,
        "Formal Language Tags = #neutral": 6,
    },
    sections=[
        ("Objective", [0]),
        ("Methodology", [1, 4]),
        ("Findings and Recommendations", [2, 3, 5, 6]),
    ],
    sentences=[
        "This report quantifies battery life across video playback, browsing, and idle conditions.",
        "Each condition ran three two-hour trials at fixed brightness with background sync disabled.",
        "Average drain rates were 14.2 percent per hour for video, 8.9 for browsing, and 1.1 at idle.",
        "Charging above 90 percent overnight emerged as the main avoidable issue, and capping charge is the first suggestion.",
        "Instrument models, firmware versions, and logging intervals are tabulated for replication.",
        "Terminology is kept at the level an engineering team expects.",
        "Wording stays precise and neutral throughout the report.",
    ],
)

LETTER = EntrySpec(
    reply="Letter goal and intents extracted; dimensions set for memory detail and closing. Writing the letter.",
    goal=(
        "Write a warm personal letter reconnecting with a childhood friend",
        "personal letter writing",
        "reconnecting with a childhood friend after years apart",
    ),
    intents=[
        ("Open by recalling a fond memory we shared", 0.95, 0),
        ("Share honestly how life has been in the years apart", 0.9, 1),
        ("Express genuine interest in reconnecting", 0.85, 3),
        ("Keep the tone warm rather than formal", 0.8, 6),
    ],
    dimensions=[
        slider(
            "Memory Detail",
            4,
            (
                "Name the memory in passing.",
                "One-sentence sketch of the memory.",
                "A short paragraph of the memory.",
                "The memory retold with its small particulars.",
                "The memory as the letter's full centerpiece.",
            ),
        ),
        radio(
            "Letter Closing",
            ["Suggest a call", "Suggest meeting up", "Leave it open"],
            "Suggest meeting up",
            {
                "Suggest a call": "Ends proposing a phone catch-up.",
                "Suggest meeting up": "Ends proposing a concrete meet-up.",
                "Leave it open": "Ends without asking for anything.",
            },
        ),
        tags(
            "Warm Tone Tags",
            ["#warm", "#genuine"],
            {
                "#warm": "Reads like talk across a kitchen table.",
                "#genuine": "No greeting-card phrases.",
            },
        ),
    ],
    dimension_quotes={
        "Memory Detail = 4": 4,
        "Letter Closing = Suggest meeting up": 5,
        "Warm Tone Tags = #warm": 6,
        "Warm Tone Tags = #genuine": 6,
    },
    sections=[
        (None, [0, 4]),
        (None, [1, 2]),
        (None, [3, 5, 6]),
    ],
    sentences=[
        "Do you remember the summer we spent building that leaking raft on the Millers' pond?",
        "Since we last spoke I moved twice, switched from law to teaching, and adopted an enormous orange cat.",
        "I have missed your way of making ordinary afternoons feel like plans.",
        "I would really love to reconnect, properly, not just likes on old photos.",
        "The raft gets its full story: the borrowed pallet wood, your soaked sneakers, the triumphant six feet it floated.",
        "The letter closes by proposing an actual meet-up next month at the old bakery.",
        "Every line is written the way I would say it to you in person, warm and unpolished.",
    ],
)

POST = EntrySpec(
    reply="Post goal and intents extracted; dimensions set for length and audience. Drafting the post.",
    goal=(
        "Write an engaging social media post about a recent personal achievement in under 200 words",
        "social media writing",
        "sharing a recent personal achievement",
    ),
    intents=[
        ("Open with an authentic hook about the achievement", 0.95, 0),
        ("Keep the post under 200 words", 0.9, 1),
        ("Include a positive motivational message for the audience", 0.85, 2),
        ("Invite the audience to share their own story", 0.8, 3),
    ],
    dimensions=[
        slider("Post Length", 2, LEVELS_LENGTH),
        radio(
            "Audience Address",
            ["Speak to everyone", "Speak to peers", "Speak to beginners"],
            "Speak to everyone",
            {
                "Speak to everyone": "No niche jargon; anyone scrolling can land.",
                "Speak to peers": "Assumes shared context with the community.",
                "Speak to beginners": "Explains terms, encourages first steps.",
            },
        ),
        tags(
            "Post Hashtags",
            ["#milestone", "#keepgoing"],
            {
                "#milestone": "Marks the achievement for discovery.",
                "#keepgoing": "Carries the motivational message.",
            },
        ),
    ],
    dimension_quotes={
        "Post Length = 2": 4,
        "Audience Address = Speak to everyone": 5,
        "Post Hashtags = #milestone": 6,
        "Post Hashtags = #keepgoing": 6,
    },
    sections=[
        (None, [0, 1]),
        (None, [2, 4]),
        (None, [3, 5, 6]),
    ],
    sentences=[
        "Six months ago I could not run to the end of my street; yesterday I finished my first half marathon.",
        "The whole post stays under two hundred words, because the finish line said enough.",
        "If you are circling a scary goal of your own: start embarrassingly small and stay boringly consistent.",
        "What is the small habit that carried you further than you expected? Tell me below.",
        "Short paragraphs and one breath of a sentence each keep the post tight.",
        "It speaks to everyone scrolling past, not just runners.",
        "It closes on #milestone and #keepgoing so the message travels.",
    ],
)

PITCH = EntrySpec(
    reply="Pitch goal and intents extracted; dimensions set for features and opening. Writing the pitch.",
    goal=(
        "Write a confident 60-second elevator pitch for a productivity app for remote teams",
        "professional pitch writing",
        "a new productivity app for remote team collaboration",
    ),
    intents=[
        ("Name the specific problem remote teams face", 0.95, 0),
        ("Highlight the key features that solve the problem", 0.9, 1),
        ("Keep the pitch within 60 seconds when spoken", 0.85, 2),
        ("Sound confident and compelling without hype", 0.8, 3),
    ],
    dimensions=[
        slider(
            "Features Covered",
            3,
            (
                "One flagship feature only.",
                "Two features, one line each.",
                "Three features, one line each.",
                "Four features with a phrase of context.",
                "The full feature tour.",
            ),
        ),
        radio(
            "Pitch Opening",
            ["Problem first", "Vision first", "Customer story first"],
            "Problem first",
            {
                "Problem first": "Opens on the pain the listener already owns.",
                "Vision first": "Opens on the world after the product.",
                "Customer story first": "Opens on one named team's before-and-after.",
            },
        ),
        tags(
            "Pitch Tone Tags",
            ["#confident", "#direct"],
            {
                "#confident": "Declarative sentences, no hedging.",
                "#direct": "No filler before the point.",
            },
        ),
    ],
    dimension_quotes={
        "Features Covered = 3": 4,
        "Pitch Opening = Problem first": 5,
        "Pitch Tone Tags = #confident": 6,
        "Pitch Tone Tags = #direct": 6,
    },
    sections=[
        ("The Problem", [0, 5]),
        ("The Fix", [1, 4]),
        ("The Delivery", [2, 3, 6]),
    ],
    sentences=[
        "Remote teams lose nearly a day each week to scattered updates, duplicated work, and time-zone tag.",
        "Relay fixes that with one shared timeline, async stand-ups, and decisions that never leave the thread.",
        "Spoken at a natural pace, the pitch lands in fifty-five seconds.",
        "No superlatives and no vaporware: just the problem, the fix, and the ask.",
        "Three features get one line each; everything else waits for the demo.",
        "It opens on the problem, because the problem is what the listener already owns.",
        "The vocal register is confident and direct from the first sentence.",
    ],
)

EMAIL = EntrySpec(
    reply="Email goal and intents extracted; dimensions set for formality and format. Composing the email.",
    goal=(
        "Write a courteous professional email requesting a partnership meeting",
        "business email writing",
        "requesting a meeting to explore a potential partnership",
    ),
    intents=[
        ("Introduce yourself and your organization politely", 0.95, 0),
        ("Explain the reason for reaching out", 0.9, 1),
        ("Propose a concrete meeting time", 0.85, 2),
        ("Close with a courteous sign-off", 0.8, 3),
    ],
    dimensions=[
        slider(
            "Email Formality",
            4,
            (
                "Casual: first names and contractions.",
                "Relaxed professional.",
                "Standard business register.",
                "Polished: full titles, no contractions.",
                "Ceremonial: maximum deference.",
            ),
        ),
        radio(
            "Meeting Format",
            ["Video call", "Phone call", "In person"],
            "Video call",
            {
                "Video call": "Proposes a thirty-minute video call.",
                "Phone call": "Proposes a short phone call.",
                "In person": "Proposes meeting at their office.",
            },
        ),
        tags(
            "Email Tone Tags",
            ["#professional", "#warm"],
            {
                "#professional": "Business register with concrete asks.",
                "#warm": "Genuine interest, not boilerplate.",
            },
        ),
    ],
    dimension_quotes={
        "Email Formality = 4": 4,
        "Meeting Format = Video call": 5,
        "Email Tone Tags = #professional": 4,
        "Email Tone Tags = #warm": 4,
    },
    sections=[
        ("Introduction", [0, 1]),
        ("The Ask", [2, 5]),
        ("Sign-off", [3, 4]),
    ],
    sentences=[
        "My name is Jordan Avery, and I lead partnerships at Fieldnote Labs, a small analytics studio.",
        "I am reaching out because your open-data work overlaps directly with our municipal dashboards.",
        "Would Tuesday the 14th at 10:00, or any slot that week, suit you for a thirty-minute conversation?",
        "With appreciation for your time, and looking forward to hearing from you.",
        "The register sits one notch below ceremonial: professional, warm, and unstuffy.",
        "A video call is proposed first since your team is distributed.",
    ],
)

# Order matches the shipped corpus; the duplicated journalistic prompt reuses the
# poem spec (identical request keys replay the same recorded responses anyway).
ENTRY_SPECS = [ESSAY, PROPOSAL, POEM, FICTION, NEWS, POEM, EXPLAINER, REPORT, LETTER, POST, PITCH, EMAIL]


# ---------------------------------------------------------------------------
# Walkthrough scenario: photosynthesis article, follow-up, keep, targeted turn,
# and a slider-edit regeneration.
# ---------------------------------------------------------------------------

WT_PROMPT_1 = "Write a scientific and concise article on photosynthesis."
WT_PROMPT_2 = (
    "I want to make the article easier for readers without a science background to understand, "
    "while keeping the academic tone"
)
WT_PROMPT_3 = "Add a bit more background about why photosynthesis is important for the environment."

WT_INTENTS_1 = [
    ("Include key concepts and processes of photosynthesis", 0.95),
    ("Ensure the topic adheres to academic writing standards", 0.85),
    ("Introduce the topic concisely", 0.8),
    ("Maintain scientific accuracy throughout", 0.75),
]
WT_INTENT_5 = "Use simpler terminology to explain the scientific concepts of photosynthesis"
WT_INTENT_3_REVISED = (
    "Introduce the topic concisely with background on why photosynthesis matters for the environment"
)

WT_LENGTH = slider(
    "Length of Article",
    4,
    (
        "A single compact paragraph.",
        "Two short paragraphs covering only the core process.",
        "Three paragraphs: process, context, significance.",
        "A full short article with two supporting paragraphs.",
        "Long-form treatment with examples and asides.",
    ),
)
WT_FOCUS = radio(
    "Article focus",
    ["Process details", "Real-world importance", "Research frontiers"],
    "Process details",
    {
        "Process details": "Centers the light reactions and the Calvin cycle.",
        "Real-world importance": "Centers oxygen, food webs, and climate.",
        "Research frontiers": "Centers artificial photosynthesis research.",
    },
)
WT_TONE = tags(
    "Writing tone",
    ["#scientific", "#concise"],
    {
        "#scientific": "Precise terminology, measured claims.",
        "#concise": "No sentence that does not earn its place.",
    },
)
WT_TERMINOLOGY = slider(
    "Terminology Complexity",
    2,
    (
        "Everyday words only.",
        "Everyday words first, technical terms in parentheses.",
        "Technical terms with a one-line gloss.",
        "Technical terms as in a textbook.",
        "Specialist vocabulary without glosses.",
    ),
)
WT_AUDIENCE = radio(
    "Target Audience",
    ["General public", "High school students", "Researchers"],
    "General public",
    {
        "General public": "Assumes no science background at all.",
        "High school students": "Assumes basic biology vocabulary.",
        "Researchers": "Assumes domain fluency.",
    },
)

_S1 = {
    "convert": "Photosynthesis is the process by which green plants convert sunlight into chemical energy.",
    "steps": "Light-dependent reactions capture solar energy while the Calvin cycle builds sugars from carbon dioxide.",
    "academic": "The article follows academic conventions for short-form science writing.",
    "intro": "In one sentence: leaves are factories powered by light.",
    "accuracy": "Claims are checked against introductory textbook accounts for scientific accuracy.",
    "length4": "Level-four length allows two supporting paragraphs beyond the core explanation.",
    "focus": "The article concentrates on process details over history or applications.",
    "tone": "Tone markers stay scientific and concise throughout.",
}

WT_TURN_1 = TurnScript(
    entrypoint={
        "reply": "I will set up your goal, intents, and adjustable dimensions, then draft the article.",
        "invoke": ["goal", "intent", "dimension", "output"],
        "provisional_kind": "Add",
    },
    goal={
        "task_goal": "Write a scientific and concise article on photosynthesis",
        "writing_domain": "science writing/article",
        "topic": "photosynthesis",
    },
    intents=[{"text": text, "salience": salience} for text, salience in WT_INTENTS_1],
    dimensions=[WT_LENGTH, WT_FOCUS, WT_TONE],
    sections=[
        {"header": "What Is Photosynthesis", "body": f"{_S1['intro']} {_S1['convert']}"},
        {"header": "Key Concepts and Processes", "body": f"{_S1['steps']} {_S1['focus']}"},
        {"header": "Why It Matters", "body": f"{_S1['academic']} {_S1['accuracy']} {_S1['length4']} {_S1['tone']}"},
    ],
    quotes={
        "Include key concepts and processes of photosynthesis": ["sunlight into chemical energy", _S1["steps"]],
        "Ensure the topic adheres to academic writing standards": [_S1["academic"]],
        "Introduce the topic concisely": [_S1["intro"]],
        "Maintain scientific accuracy throughout": [_S1["accuracy"]],
        "Length of Article = 4": [_S1["length4"]],
        "Article focus = Process details": [_S1["focus"]],
        "Writing tone = #scientific": [_S1["tone"]],
        "Writing tone = #concise": [_S1["tone"]],
    },
)

_S2 = {
    "convert": _S1["convert"],
    "steps": _S1["steps"],
    "simpler": "Plain-language definitions replace jargon wherever a simpler word carries the same meaning.",
    "intro": _S1["intro"],
    "academic": "The framing stays academic even as the vocabulary relaxes.",
    "accuracy": "Accuracy is preserved: simpler words, same chemistry.",
    "length4": "Level-four length keeps two supporting paragraphs.",
    "focus": "The focus remains on process details.",
    "tone": "Tone tags stay scientific and concise, now with gentler phrasing.",
    "terminology": "Terminology complexity sits at level two: everyday words first, technical terms in parentheses.",
    "audience": "The article now addresses readers with no science background directly.",
}

WT_TURN_2 = TurnScript(
    entrypoint={
        "reply": "Your goal stays the same; I will add accessibility intents, adjust the dimensions, and regenerate.",
        "invoke": ["intent", "dimension", "output"],
        "provisional_kind": "Add",
    },
    intents=[{"text": text, "salience": salience} for text, salience in WT_INTENTS_1]
    + [{"text": WT_INTENT_5, "salience": 0.9}],
    dimensions=[WT_LENGTH, WT_FOCUS, WT_TONE, WT_TERMINOLOGY, WT_AUDIENCE],
    sections=[
        {"header": "What Is Photosynthesis", "body": f"{_S2['intro']} {_S2['convert']} {_S2['simpler']}"},
        {"header": "Key Concepts and Processes", "body": f"{_S2['steps']} {_S2['terminology']}"},
        {
            "header": "Why It Matters",
            "body": f"{_S2['academic']} {_S2['accuracy']} {_S2['audience']} {_S2['length4']} {_S2['focus']} {_S2['tone']}",
        },
    ],
    quotes={
        "Include key concepts and processes of photosynthesis": ["sunlight into chemical energy", _S2["steps"]],
        "Ensure the topic adheres to academic writing standards": [_S2["academic"]],
        "Introduce the topic concisely": [_S2["intro"]],
        "Maintain scientific accuracy throughout": [_S2["accuracy"]],
        WT_INTENT_5: [_S2["simpler"]],
        "Length of Article = 4": [_S2["length4"]],
        "Article focus = Process details": [_S2["focus"]],
        "Writing tone = #scientific": [_S2["tone"]],
        "Writing tone = #concise": [_S2["tone"]],
        "Terminology Complexity = 2": [_S2["terminology"]],
        "Target Audience = General public": [_S2["audience"]],
    },
)

_S3 = dict(
    _S2,
    intro=_S2["intro"],
    background=(
        "Without photosynthesis there would be no breathable oxygen, no stable climate buffer, "
        "and no base for the food webs the environment depends on."
    ),
)

WT_TURN_3 = TurnScript(
    intents=[
        {"text": WT_INTENTS_1[0][0], "salience": 0.95},
        {"text": WT_INTENTS_1[1][0], "salience": 0.85},
        {"text": WT_INTENT_3_REVISED, "salience": 0.8},
        {"text": WT_INTENTS_1[3][0], "salience": 0.75},
        {"text": WT_INTENT_5, "salience": 0.9},
    ],
    sections=[
        {
            "header": "What Is Photosynthesis",
            "body": f"{_S3['intro']} {_S3['background']} {_S3['convert']} {_S3['simpler']}",
        },
        {"header": "Key Concepts and Processes", "body": f"{_S3['steps']} {_S3['terminology']}"},
        {
            "header": "Why It Matters",
            "body": f"{_S3['academic']} {_S3['accuracy']} {_S3['audience']} {_S3['length4']} {_S3['focus']} {_S3['tone']}",
        },
    ],
    quotes={
        "Include key concepts and processes of photosynthesis": ["sunlight into chemical energy", _S3["steps"]],
        "Ensure the topic adheres to academic writing standards": [_S3["academic"]],
        WT_INTENT_3_REVISED: [_S3["background"]],
        "Maintain scientific accuracy throughout": [_S3["accuracy"]],
        WT_INTENT_5: [_S3["simpler"]],
        "Length of Article = 4": [_S3["length4"]],
        "Article focus = Process details": [_S3["focus"]],
        "Writing tone = #scientific": [_S3["tone"]],
        "Writing tone = #concise": [_S3["tone"]],
        "Terminology Complexity = 2": [_S3["terminology"]],
        "Target Audience = General public": [_S3["audience"]],
    },
)

_S4 = dict(_S3, length3="Level-three length trims the article to the core explanation.")

WT_TURN_4 = TurnScript(
    sections=[
        {
            "header": "What Is Photosynthesis",
            "body": f"{_S4['intro']} {_S4['background']} {_S4['convert']} {_S4['simpler']}",
        },
        {"header": "Key Concepts and Processes", "body": f"{_S4['steps']} {_S4['terminology']}"},
        {"header": "Why It Matters", "body": f"{_S4['accuracy']} {_S4['length3']} {_S4['tone']}"},
    ],
    quotes={
        "Include key concepts and processes of photosynthesis": ["sunlight into chemical energy", _S4["steps"]],
        "Ensure the topic adheres to academic writing standards": [],
        WT_INTENT_3_REVISED: [_S4["background"]],
        "Maintain scientific accuracy throughout": [_S4["accuracy"]],
        WT_INTENT_5: [_S4["simpler"]],
        "Length of Article = 3": [_S4["length3"]],
        "Article focus = Process details": [],
        "Writing tone = #scientific": [_S4["tone"]],
        "Writing tone = #concise": [_S4["tone"]],
        "Terminology Complexity = 2": [_S4["terminology"]],
        "Target Audience = General public": [],
    },
)


# The duplicated-intent corruption used by the acceptance suite. The downstream
# requests this corruption renders are pre-recorded here so a corrupted replay
# still completes the entry (only the distinctiveness check flips).
CORRUPTION_DUP_INTENT = {
    "text": "State a clear thesis on the effectiveness of online education right now",
    "salience": 0.2,
}


class _OverrideIntentResponse:
    """Answers the intent request from a fixed variant; delegates the rest."""

    def __init__(self, inner, variant_items: list[dict]):
        self.inner = inner
        self.variant_items = variant_items

    def complete(self, request: CompletionRequest) -> str:
        if request.kind is ModuleKind.INTENT:
            return json.dumps({"intents": self.variant_items})
        return self.inner.complete(request)


# ---------------------------------------------------------------------------
# Generation
# ---------------------------------------------------------------------------


def _fresh_store(path: Path) -> FixtureStore:
    if path.exists():
        shutil.rmtree(path)
    return FixtureStore(path, create=True)


def record_corpus() -> None:
    corpus = load_shipped_corpus()
    assert len(corpus) == len(ENTRY_SPECS) == 12
    store = _fresh_store(FIXTURES / "corpus")
    author = AuthorProvider()
    gateway = Gateway(RecordingProvider(author, store), ProviderConfig())
    config = CheckConfig()

    for index, (entry, spec) in enumerate(zip(corpus, ENTRY_SPECS)):
        author.script = spec.script()
        session = new_session(f"bench-{index:02d}")
        result = run_turn(session, entry.prompt, gateway=gateway)
        assert result.new_page == 1, f"entry {index}: no page generated"

        page = session.page_at(1)
        checks = [
            check_q1_goal(session.goal, entry.prompt),
            check_q2_intent_count(session.intents, config),
            check_q3_distinctiveness(session.intents, config),
            check_q4_intent_relevance(session.intents, entry.prompt, session.goal),
            check_q5_dimension_relevance(session.dimensions, entry.prompt, session.intents),
            check_q6_ui_wellformed(session.dimensions),
            check_q7_values(session.dimensions),
            check_q8_links(page.document, session.intents, page.links, result.link_repairs, config),
        ]
        failing = [c for c in checks if c.status != "pass"]
        assert not failing, f"entry {index} fails authored checks: {[(c.check, c.evidence) for c in failing]}"
        linked = sum(1 for link in page.links if link.spans)
        print(f"  corpus[{index:02d}] {entry.writing_context:<12} page=1 links={linked} ok")

    # Corruption branch for entry 0: replay fixtures for the state reached after
    # a duplicated intent is injected into the recorded intent response.
    author.script = ENTRY_SPECS[0].script()
    variant_items = list(author.script.intents) + [CORRUPTION_DUP_INTENT]
    override = _OverrideIntentResponse(RecordingProvider(author, store), variant_items)
    variant_session = new_session("corruption-branch")
    variant = run_turn(variant_session, corpus[0].prompt, gateway=Gateway(override, ProviderConfig()))
    assert variant.new_page == 1
    assert any(i.text == CORRUPTION_DUP_INTENT["text"] for i in variant_session.intents)
    print(f"corpus store: {len(store.entries())} responses (incl. corruption branch)")


def record_walkthrough() -> None:
    store = _fresh_store(FIXTURES / "walkthrough")
    author = AuthorProvider()
    gateway = Gateway(RecordingProvider(author, store), ProviderConfig())
    session = new_session("walkthrough")

    author.script = WT_TURN_1
    first = run_turn(session, WT_PROMPT_1, gateway=gateway)
    assert first.new_page == 1

    author.script = WT_TURN_2
    second = run_turn(session, WT_PROMPT_2, gateway=gateway)
    assert second.new_page == 2
    assert "goal" not in second.decision.invoke

    kept = next(i for i in session.intents if i.text == WT_INTENTS_1[0][0])
    session.apply_intent_edit(ToggleKeep(kept.id))

    targeted = next(i for i in session.intents if i.text == WT_INTENTS_1[2][0])
    author.script = WT_TURN_3
    third = run_turn(session, WT_PROMPT_3, targeted.id, gateway=gateway)
    assert third.new_page == 3

    length_dim = next(d for d in session.dimensions if d.title == "Length of Article")
    session.apply_dimension_edit(SetSlider(length_dim.id, 3))
    author.script = WT_TURN_4
    regen = plan_regeneration(session, gateway)
    page = session.apply_regeneration(regen)
    assert page == 4

    for number in (3, 4):
        snapshot_intent = session.page_at(number).snapshot.intent_by_id(kept.id)
        assert snapshot_intent is not None and snapshot_intent.kept
    for prompt in gateway.output_requests()[2:]:
        assert WT_INTENTS_1[0][0] in prompt, "kept intent text missing from an output request"
    print(f"walkthrough store: {len(store.entries())} responses, pages={len(session.pages)}")


if __name__ == "__main__":
    print("recording corpus fixtures…")
    record_corpus()
    print("recording walkthrough fixtures…")
    record_walkthrough()
    print("done")
