// Generated by scripts/gen_cards_data.py from the engine's default
// catalog. Do not edit by hand; regenerate after catalog changes.
export const CARDS_DATA = {
  "businesses": {
    "1": {
      "title": "Home security system that uses facial recognition to identify the person at your door",
      "harms": [
        5,
        8,
        10,
        11,
        13
      ]
    },
    "2": {
      "title": "Crime prediction tool that can predict future crimes one week in advance with about 90% accuracy",
      "harms": [
        7,
        8,
        10,
        11
      ]
    },
    "3": {
      "title": "Personalized advertisement technology on websites people browse",
      "harms": [
        5,
        6
      ]
    },
    "4": {
      "title": "Hiring algorithms that automate hiring in big companies to reduce the time taken to go through thousands of resumes",
      "harms": [
        3,
        7,
        8,
        12
      ]
    },
    "5": {
      "title": "College admissions automator that decides who should be admitted based on different aspects in their application",
      "harms": [
        7,
        8,
        12
      ]
    },
    "6": {
      "title": "Self-driving cars",
      "harms": [
        7,
        8,
        10
      ]
    },
    "7": {
      "title": "Conversational agents",
      "harms": [
        2,
        3,
        4,
        5,
        6
      ]
    },
    "8": {
      "title": "Language translation algorithm",
      "harms": [
        2,
        7,
        8
      ]
    },
    "9": {
      "title": "Medical imaging to detect skin cancer from face images",
      "harms": [
        7,
        8,
        13
      ]
    },
    "10": {
      "title": "Recommender system for social media apps that personalizes your homepage's feed",
      "harms": [
        1,
        2,
        3,
        4,
        5,
        6
      ]
    },
    "11": {
      "title": "Generative AI Art magazine",
      "harms": [
        2,
        7,
        8,
        11
      ]
    },
    "12": {
      "title": "Face filters people can use to apply different styles to their face",
      "harms": [
        1,
        8
      ]
    },
    "13": {
      "title": "Social interactive robot",
      "harms": [
        1,
        5,
        6,
        13
      ]
    },
    "14": {
      "title": "Personalizing search engine results to give you results specific to your past searches",
      "harms": [
        1,
        2,
        3
      ]
    }
  },
  "harms": {
    "1": {
      "title": "Increased mental health challenges like depression, body dysmorphia, eating disorders",
      "color": "crimson",
      "shape": "circle"
    },
    "2": {
      "title": "Spreading misinformation",
      "color": "orange",
      "shape": "triangle"
    },
    "3": {
      "title": "Forming filter bubbles that isolate unique opinions from one another",
      "color": "gold",
      "shape": "square"
    },
    "4": {
      "title": "Encouraging hateful behavior and hate groups",
      "color": "forestgreen",
      "shape": "diamond"
    },
    "5": {
      "title": "Leaking your personal details to other parties",
      "color": "teal",
      "shape": "star"
    },
    "6": {
      "title": "Manipulating people's buying behaviors",
      "color": "deepskyblue",
      "shape": "pentagon"
    },
    "7": {
      "title": "Taking over existing human jobs",
      "color": "royalblue",
      "shape": "hexagon"
    },
    "8": {
      "title": "Algorithmic bias discriminating people based on their race, gender, ethnicity, or occupation",
      "color": "navy",
      "shape": "cross"
    },
    "9": {
      "title": "Misdiagnosing a patient's illness",
      "color": "purple",
      "shape": "heart"
    },
    "10": {
      "title": "Over-Policing neighborhoods",
      "color": "magenta",
      "shape": "crescent"
    },
    "11": {
      "title": "Leading to wrongful arrests of people",
      "color": "saddlebrown",
      "shape": "ring"
    },
    "12": {
      "title": "Marginalizing populations already under-represented in the workforce",
      "color": "slategray",
      "shape": "teardrop"
    },
    "13": {
      "title": "Overly placing trust in imperfect technology",
      "color": "black",
      "shape": "arrow"
    }
  },
  "features": {
    "1": {
      "title": "Making the underlying AI technology and data usage transparent and explainable to users",
      "counters": [
        1,
        2,
        3,
        5,
        6,
        9,
        13
      ]
    },
    "2": {
      "title": "End to end encryption of data collected",
      "counters": [
        5
      ]
    },
    "3": {
      "title": "Collecting a balanced, diverse and large dataset to train the AI technology to reduce algorithmic bias",
      "counters": [
        3,
        8,
        11
      ]
    },
    "4": {
      "title": "Enabling people to control the degree of automation in their tools",
      "counters": [
        3,
        6,
        9,
        10,
        13
      ]
    },
    "5": {
      "title": "Employing a diverse team to develop this technology to gain diverse perspectives and address diverse needs",
      "counters": [
        1,
        4,
        7,
        12
      ]
    },
    "6": {
      "title": "Including all affected populations of the technology in the design of the system",
      "counters": [
        1,
        7,
        12
      ]
    },
    "7": {
      "title": "Decision making by AI technologies to be examined by humans in the loop",
      "counters": [
        2,
        7,
        8,
        9,
        13
      ]
    }
  },
  "copies": {
    "harm": 3,
    "feature": 2,
    "wildHarm": 1,
    "wildFeature": 2
  }
} as const;
