// Real payloads captured from the caption service; the fake
// service in these tests mirrors their shapes exactly.

export const fixtures = {
  "next_after_accept": {
    "captionId": "c002",
    "captionText": "sidewinder attached to wing pylon",
    "meaning": {
      "lines": [
        "ako v5 pylon-1",
        "ako v1 sidewinder-2",
        "ako v4 wing-1",
        "rel locationover v1 v5",
        "rel modification v5 v4"
      ],
      "predicates": [
        {
          "kind": "ako",
          "synset": "pylon-1",
          "variable": "v5"
        },
        {
          "kind": "ako",
          "synset": "sidewinder-2",
          "variable": "v1"
        },
        {
          "kind": "ako",
          "synset": "wing-1",
          "variable": "v4"
        },
        {
          "dependent": "v5",
          "head": "v1",
          "kind": "rel",
          "label": "locationover"
        },
        {
          "dependent": "v4",
          "head": "v5",
          "kind": "rel",
          "label": "modification"
        }
      ]
    },
    "rank": 1,
    "schemaVersion": "1",
    "score": -19.464881118046364,
    "totalCandidates": 10,
    "tree": "(CAPTION head=sidewinder-2 score=-19.464881118046364 (NP head=sidewinder-2 score=-16.899931760584828 (NP head=sidewinder-2 score=-0.7292232370337549 (noun head=sidewinder-2 score=0.0 \"sidewinder\")) (PASTPARTPHRASE head=attach-1 score=-11.30710335123538 (PASTPARTPHRASE head=attach-1 score=-0.6690496289808848 (pastpart head=attach-1 score=0.0 \"attached\")) (PP head=pylon-1 score=-6.627230132082257 (PREP head=to-1 score=0.0 (preposition head=to-1 score=0.0 \"to\")) (NP head=pylon-1 score=-4.324645039088212 (ADJECTIVE head=wing-1 score=-0.4468503242710187 (noun head=wing-1 score=0.0 \"wing\")) (NP head=pylon-1 score=-0.7292232370337549 (noun head=pylon-1 score=0.0 \"pylon\")))))))",
    "version": "1:1"
  },
  "next_rank1": {
    "captionId": "c001",
    "captionText": "sidewinder on f-18",
    "meaning": {
      "lines": [
        "ako v3 f-18-1",
        "ako v1 sidewinder-2",
        "rel locationover v1 v3"
      ],
      "predicates": [
        {
          "kind": "ako",
          "synset": "f-18-1",
          "variable": "v3"
        },
        {
          "kind": "ako",
          "synset": "sidewinder-2",
          "variable": "v1"
        },
        {
          "dependent": "v3",
          "head": "v1",
          "kind": "rel",
          "label": "locationover"
        }
      ]
    },
    "rank": 1,
    "schemaVersion": "1",
    "score": -11.003888494500416,
    "totalCandidates": 2,
    "tree": "(CAPTION head=sidewinder-2 score=-11.003888494500416 (NP head=sidewinder-2 score=-8.204866515192478 (NP head=sidewinder-2 score=-0.7338031862010742 (noun head=sidewinder-2 score=0.0 \"sidewinder\")) (PP head=f-18-1 score=-3.1761502215702784 (PREP head=on-1 score=0.0 (preposition head=on-1 score=0.0 \"on\")) (NP head=f-18-1 score=-0.7338031862010742 (noun head=f-18-1 score=0.0 \"f-18\")))))",
    "version": "0:1"
  },
  "next_rank2": {
    "captionId": "c001",
    "captionText": "sidewinder on f-18",
    "meaning": {
      "lines": [
        "ako v3 f-18-1",
        "ako v1 sidewinder-1",
        "rel locationover v1 v3"
      ],
      "predicates": [
        {
          "kind": "ako",
          "synset": "f-18-1",
          "variable": "v3"
        },
        {
          "kind": "ako",
          "synset": "sidewinder-1",
          "variable": "v1"
        },
        {
          "dependent": "v3",
          "head": "v1",
          "kind": "rel",
          "label": "locationover"
        }
      ]
    },
    "rank": 2,
    "schemaVersion": "1",
    "score": -14.725062888241172,
    "totalCandidates": 2,
    "tree": "(CAPTION head=sidewinder-1 score=-14.725062888241172 (NP head=sidewinder-1 score=-11.926040908933235 (NP head=sidewinder-1 score=-0.7338031862010742 (noun head=sidewinder-1 score=0.0 \"sidewinder\")) (PP head=f-18-1 score=-3.1761502215702784 (PREP head=on-1 score=0.0 (preposition head=on-1 score=0.0 \"on\")) (NP head=f-18-1 score=-0.7338031862010742 (noun head=f-18-1 score=0.0 \"f-18\")))))",
    "version": "0:2"
  },
  "query": {
    "results": [
      {
        "bestScore": -11.003888494500416,
        "bindingCount": 1,
        "captionId": "c001",
        "interpretations": [
          {
            "lines": [
              "ako v3 f-18-1",
              "ako v1 sidewinder-2",
              "rel locationover v1 v3"
            ],
            "predicates": [
              {
                "kind": "ako",
                "synset": "f-18-1",
                "variable": "v3"
              },
              {
                "kind": "ako",
                "synset": "sidewinder-2",
                "variable": "v1"
              },
              {
                "dependent": "v3",
                "head": "v1",
                "kind": "rel",
                "label": "locationover"
              }
            ]
          },
          {
            "lines": [
              "ako v3 f-18-1",
              "ako v1 sidewinder-1",
              "rel locationover v1 v3"
            ],
            "predicates": [
              {
                "kind": "ako",
                "synset": "f-18-1",
                "variable": "v3"
              },
              {
                "kind": "ako",
                "synset": "sidewinder-1",
                "variable": "v1"
              },
              {
                "dependent": "v3",
                "head": "v1",
                "kind": "rel",
                "label": "locationover"
              }
            ]
          }
        ],
        "matchedInterpretation": 0,
        "matchedPredicates": [
          "ako v3 f-18-1",
          "ako v1 sidewinder-2",
          "rel locationover v1 v3"
        ],
        "text": "sidewinder on f-18"
      },
      {
        "bestScore": -19.6843509824539,
        "bindingCount": 2,
        "captionId": "c002",
        "interpretations": [
          {
            "lines": [
              "ako v5 pylon-1",
              "ako v1 sidewinder-2",
              "ako v4 wing-1",
              "rel locationover v1 v5",
              "rel modification v5 v4"
            ],
            "predicates": [
              {
                "kind": "ako",
                "synset": "pylon-1",
                "variable": "v5"
              },
              {
                "kind": "ako",
                "synset": "sidewinder-2",
                "variable": "v1"
              },
              {
                "kind": "ako",
                "synset": "wing-1",
                "variable": "v4"
              },
              {
                "dependent": "v5",
                "head": "v1",
                "kind": "rel",
                "label": "locationover"
              },
              {
                "dependent": "v4",
                "head": "v5",
                "kind": "rel",
                "label": "modification"
              }
            ]
          },
          {
            "lines": [
              "ako v5 pylon-1",
              "ako v1 sidewinder-1",
              "ako v4 wing-1",
              "rel locationover v1 v5",
              "rel modification v5 v4"
            ],
            "predicates": [
              {
                "kind": "ako",
                "synset": "pylon-1",
                "variable": "v5"
              },
              {
                "kind": "ako",
                "synset": "sidewinder-1",
                "variable": "v1"
              },
              {
                "kind": "ako",
                "synset": "wing-1",
                "variable": "v4"
              },
              {
                "dependent": "v5",
                "head": "v1",
                "kind": "rel",
                "label": "locationover"
              },
              {
                "dependent": "v4",
                "head": "v5",
                "kind": "rel",
                "label": "modification"
              }
            ]
          },
          {
            "lines": [
              "ako v2 attach-1",
              "ako v5 pylon-1",
              "ako v1 sidewinder-2",
              "ako v4 wing-1",
              "rel locationover v1 v5",
              "rel modification v5 v4",
              "rel verbal-object v1 v2"
            ],
            "predicates": [
              {
                "kind": "ako",
                "synset": "attach-1",
                "variable": "v2"
              },
              {
                "kind": "ako",
                "synset": "pylon-1",
                "variable": "v5"
              },
              {
                "kind": "ako",
                "synset": "sidewinder-2",
                "variable": "v1"
              },
              {
                "kind": "ako",
                "synset": "wing-1",
                "variable": "v4"
              },
              {
                "dependent": "v5",
                "head": "v1",
                "kind": "rel",
                "label": "locationover"
              },
              {
                "dependent": "v4",
                "head": "v5",
                "kind": "rel",
                "label": "modification"
              },
              {
                "dependent": "v2",
                "head": "v1",
                "kind": "rel",
                "label": "verbal-object"
              }
            ]
          }
        ],
        "matchedInterpretation": 0,
        "matchedPredicates": [
          "ako v5 pylon-1",
          "ako v1 sidewinder-2",
          "rel locationover v1 v5"
        ],
        "text": "sidewinder attached to wing pylon"
      },
      {
        "bestScore": -21.783799212240744,
        "bindingCount": 1,
        "captionId": "c003",
        "interpretations": [
          {
            "lines": [
              "ako v3 aim-9m-1",
              "ako v1 pylon-1",
              "ako v4 sidewinder-2",
              "rel locationover v4 v1",
              "rel modification v4 v3"
            ],
            "predicates": [
              {
                "kind": "ako",
                "synset": "aim-9m-1",
                "variable": "v3"
              },
              {
                "kind": "ako",
                "synset": "pylon-1",
                "variable": "v1"
              },
              {
                "kind": "ako",
                "synset": "sidewinder-2",
                "variable": "v4"
              },
              {
                "dependent": "v1",
                "head": "v4",
                "kind": "rel",
                "label": "locationover"
              },
              {
                "dependent": "v3",
                "head": "v4",
                "kind": "rel",
                "label": "modification"
              }
            ]
          },
          {
            "lines": [
              "ako v3 aim-9m-1",
              "ako v2 mount-1",
              "ako v1 pylon-1",
              "ako v4 sidewinder-2",
              "rel modification v4 v1",
              "rel modification v4 v3",
              "rel verbal-object v4 v2"
            ],
            "predicates": [
              {
                "kind": "ako",
                "synset": "aim-9m-1",
                "variable": "v3"
              },
              {
                "kind": "ako",
                "synset": "mount-1",
                "variable": "v2"
              },
              {
                "kind": "ako",
                "synset": "pylon-1",
                "variable": "v1"
              },
              {
                "kind": "ako",
                "synset": "sidewinder-2",
                "variable": "v4"
              },
              {
                "dependent": "v1",
                "head": "v4",
                "kind": "rel",
                "label": "modification"
              },
              {
                "dependent": "v3",
                "head": "v4",
                "kind": "rel",
                "label": "modification"
              },
              {
                "dependent": "v2",
                "head": "v4",
                "kind": "rel",
                "label": "verbal-object"
              }
            ]
          },
          {
            "lines": [
              "ako v3 aim-9m-1",
              "ako v1 pylon-1",
              "ako v4 sidewinder-1",
              "rel locationover v4 v1",
              "rel modification v4 v3"
            ],
            "predicates": [
              {
                "kind": "ako",
                "synset": "aim-9m-1",
                "variable": "v3"
              },
              {
                "kind": "ako",
                "synset": "pylon-1",
                "variable": "v1"
              },
              {
                "kind": "ako",
                "synset": "sidewinder-1",
                "variable": "v4"
              },
              {
                "dependent": "v1",
                "head": "v4",
                "kind": "rel",
                "label": "locationover"
              },
              {
                "dependent": "v3",
                "head": "v4",
                "kind": "rel",
                "label": "modification"
              }
            ]
          }
        ],
        "matchedInterpretation": 0,
        "matchedPredicates": [
          "ako v1 pylon-1",
          "ako v4 sidewinder-2",
          "rel locationover v4 v1"
        ],
        "text": "pylon mounted aim-9m sidewinders"
      }
    ],
    "schemaVersion": "1"
  },
  "stats0": {
    "grammarRules": 39,
    "indexedCaptions": 55,
    "schemaVersion": "1",
    "session": {
      "corpusSize": 55,
      "cursor": 0,
      "exhausted": false,
      "firstTryAccepted": 0,
      "firstTryAccuracy": 0.0,
      "reviewed": 0
    },
    "store": {
      "pairEntries": 746,
      "totalInstances": 310,
      "unaryEntries": 113
    }
  },
  "stats1": {
    "grammarRules": 39,
    "indexedCaptions": 55,
    "schemaVersion": "1",
    "session": {
      "corpusSize": 55,
      "cursor": 1,
      "exhausted": false,
      "firstTryAccepted": 0,
      "firstTryAccuracy": 0.0,
      "reviewed": 1
    },
    "store": {
      "pairEntries": 756,
      "totalInstances": 313,
      "unaryEntries": 113
    }
  }
};
