// Frozen API payloads captured from the backend replay state.

export const fixtures = {
  "graph": {
    "schema": 1,
    "methods": {
      "M": {
        "nodes": [
          {
            "ordinal": 0,
            "label": "M.V0",
            "createdBuild": "build0",
            "origin": "initial"
          },
          {
            "ordinal": 1,
            "label": "M.V1",
            "createdBuild": "build1",
            "origin": "source_modification"
          },
          {
            "ordinal": 2,
            "label": "M.V2",
            "createdBuild": "build2",
            "origin": "source_modification"
          },
          {
            "ordinal": 3,
            "label": "M.V3",
            "createdBuild": "build3",
            "origin": "source_modification"
          }
        ],
        "steps": [
          {
            "build": "build0",
            "outcome": {
              "kind": "initial",
              "version": 0
            }
          },
          {
            "build": "build1",
            "outcome": {
              "kind": "modified",
              "version": 1
            }
          },
          {
            "build": "build2",
            "outcome": {
              "kind": "modified",
              "version": 2
            }
          },
          {
            "build": "build3",
            "outcome": {
              "kind": "modified",
              "version": 3
            }
          },
          {
            "build": "build4",
            "outcome": {
              "kind": "unchanged",
              "version": 3
            }
          }
        ],
        "openBranches": [
          3
        ]
      },
      "B0": {
        "nodes": [
          {
            "ordinal": 0,
            "label": "B0.V0",
            "createdBuild": "build0",
            "origin": "initial"
          },
          {
            "ordinal": 1,
            "label": "B0.V1",
            "createdBuild": "build2",
            "origin": "anomaly_fork"
          },
          {
            "ordinal": 2,
            "label": "B0.V2",
            "createdBuild": "build4",
            "origin": "source_modification"
          }
        ],
        "steps": [
          {
            "build": "build0",
            "outcome": {
              "kind": "initial",
              "version": 0
            }
          },
          {
            "build": "build1",
            "outcome": {
              "kind": "unchanged",
              "version": 0
            }
          },
          {
            "build": "build2",
            "outcome": {
              "kind": "fork",
              "version": 1,
              "from": 0
            }
          },
          {
            "build": "build3",
            "outcome": {
              "kind": "reverted",
              "version": 0
            }
          },
          {
            "build": "build4",
            "outcome": {
              "kind": "modified",
              "version": 2
            }
          }
        ],
        "openBranches": [
          2
        ]
      },
      "B1": {
        "nodes": [
          {
            "ordinal": 0,
            "label": "B1.V0",
            "createdBuild": "build0",
            "origin": "initial"
          },
          {
            "ordinal": 1,
            "label": "B1.V1",
            "createdBuild": "build3",
            "origin": "anomaly_fork"
          }
        ],
        "steps": [
          {
            "build": "build0",
            "outcome": {
              "kind": "initial",
              "version": 0
            }
          },
          {
            "build": "build1",
            "outcome": {
              "kind": "unchanged",
              "version": 0
            }
          },
          {
            "build": "build2",
            "outcome": {
              "kind": "unchanged",
              "version": 0
            }
          },
          {
            "build": "build3",
            "outcome": {
              "kind": "fork",
              "version": 1,
              "from": 0
            }
          },
          {
            "build": "build4",
            "outcome": {
              "kind": "unchanged",
              "version": 1
            }
          }
        ],
        "openBranches": [
          1,
          0
        ]
      }
    }
  },
  "builds": [
    {
      "build": "build0",
      "outcomes": {
        "M": {
          "kind": "initial",
          "version": 0,
          "label": "M.V0"
        },
        "B0": {
          "kind": "initial",
          "version": 0,
          "label": "B0.V0"
        },
        "B1": {
          "kind": "initial",
          "version": 0,
          "label": "B1.V0"
        }
      }
    },
    {
      "build": "build1",
      "outcomes": {
        "M": {
          "kind": "modified",
          "version": 1,
          "label": "M.V1"
        },
        "B0": {
          "kind": "unchanged",
          "version": 0,
          "label": "B0.V0"
        },
        "B1": {
          "kind": "unchanged",
          "version": 0,
          "label": "B1.V0"
        }
      }
    },
    {
      "build": "build2",
      "outcomes": {
        "M": {
          "kind": "modified",
          "version": 2,
          "label": "M.V2"
        },
        "B0": {
          "kind": "fork",
          "version": 1,
          "label": "B0.V1",
          "from": 0
        },
        "B1": {
          "kind": "unchanged",
          "version": 0,
          "label": "B1.V0"
        }
      }
    },
    {
      "build": "build3",
      "outcomes": {
        "M": {
          "kind": "modified",
          "version": 3,
          "label": "M.V3"
        },
        "B0": {
          "kind": "reverted",
          "version": 0,
          "label": "B0.V0"
        },
        "B1": {
          "kind": "fork",
          "version": 1,
          "label": "B1.V1",
          "from": 0
        }
      }
    },
    {
      "build": "build4",
      "outcomes": {
        "M": {
          "kind": "unchanged",
          "version": 3,
          "label": "M.V3"
        },
        "B0": {
          "kind": "modified",
          "version": 2,
          "label": "B0.V2"
        },
        "B1": {
          "kind": "unchanged",
          "version": 1,
          "label": "B1.V1"
        }
      }
    }
  ],
  "anomaly": {
    "verdict": {
      "section": "B1",
      "sourceBuild": "build0",
      "targetBuild": "build3",
      "result": "anomaly",
      "edits": [
        {
          "category": "StructuralViolation",
          "violating": true,
          "sourceLine": null,
          "targetLine": 18,
          "detail": "inserted nop"
        }
      ]
    },
    "source": {
      "build": "build0",
      "lines": [
        {
          "line": 16,
          "text": "movq\t(%rsi), %rax",
          "role": "instruction",
          "annotations": []
        },
        {
          "line": 17,
          "text": "addq\t8(%rsi), %rax",
          "role": "instruction",
          "annotations": []
        }
      ]
    },
    "target": {
      "build": "build3",
      "lines": [
        {
          "line": 16,
          "text": "movq\t(%rsi), %rax",
          "role": "instruction",
          "annotations": []
        },
        {
          "line": 17,
          "text": "addq\t8(%rsi), %rax",
          "role": "instruction",
          "annotations": []
        },
        {
          "line": 18,
          "text": "nop",
          "role": "instruction",
          "annotations": [
            {
              "category": "StructuralViolation",
              "violating": true
            }
          ]
        }
      ]
    }
  },
  "anomalyMixed": {
    "verdict": {
      "section": "S",
      "sourceBuild": "build3",
      "targetBuild": "build4",
      "result": "anomaly",
      "edits": [
        {
          "category": "ImmediateChanged",
          "violating": true,
          "sourceLine": 4,
          "targetLine": 4,
          "detail": "immediate $4 -> $8"
        },
        {
          "category": "RegisterRenamed",
          "violating": false,
          "sourceLine": 5,
          "targetLine": 5,
          "detail": "register %rcx -> %rdx"
        },
        {
          "category": "GroupReorder",
          "violating": false,
          "sourceLine": 11,
          "targetLine": 8,
          "detail": "reordered group of 2 instructions"
        },
        {
          "category": "GroupReorder",
          "violating": false,
          "sourceLine": 8,
          "targetLine": 11,
          "detail": "reordered group of 2 instructions"
        }
      ]
    },
    "source": {
      "build": "build3",
      "lines": [
        {
          "line": 4,
          "text": "movq\t$4, %rax",
          "role": "instruction",
          "annotations": [
            {
              "category": "ImmediateChanged",
              "violating": true
            }
          ]
        },
        {
          "line": 5,
          "text": "addq\t%rbx, %rcx",
          "role": "instruction",
          "annotations": [
            {
              "category": "RegisterRenamed",
              "violating": false
            }
          ]
        },
        {
          "line": 6,
          "text": "jne\t.La",
          "role": "instruction",
          "annotations": []
        },
        {
          "line": 7,
          "text": "jmp\t.Lb",
          "role": "instruction",
          "annotations": []
        },
        {
          "line": null,
          "text": "",
          "role": "group_break",
          "annotations": []
        },
        {
          "line": 8,
          "text": ".La:",
          "role": "label",
          "annotations": [
            {
              "category": "GroupReorder",
              "violating": false
            }
          ]
        },
        {
          "line": 9,
          "text": "imulq\t%r8, %rax",
          "role": "instruction",
          "annotations": []
        },
        {
          "line": 10,
          "text": "jmp\t.Ldone",
          "role": "instruction",
          "annotations": []
        },
        {
          "line": null,
          "text": "",
          "role": "group_break",
          "annotations": []
        },
        {
          "line": 11,
          "text": ".Lb:",
          "role": "label",
          "annotations": [
            {
              "category": "GroupReorder",
              "violating": false
            }
          ]
        },
        {
          "line": 12,
          "text": "notq\t%rax",
          "role": "instruction",
          "annotations": []
        },
        {
          "line": 13,
          "text": "jmp\t.Ldone",
          "role": "instruction",
          "annotations": []
        },
        {
          "line": null,
          "text": "",
          "role": "group_break",
          "annotations": []
        },
        {
          "line": 14,
          "text": ".Ldone:",
          "role": "label",
          "annotations": []
        },
        {
          "line": 15,
          "text": "subq\t$1, %rax",
          "role": "instruction",
          "annotations": []
        }
      ]
    },
    "target": {
      "build": "build4",
      "lines": [
        {
          "line": 4,
          "text": "movq\t$8, %rax",
          "role": "instruction",
          "annotations": [
            {
              "category": "ImmediateChanged",
              "violating": true
            }
          ]
        },
        {
          "line": 5,
          "text": "addq\t%rbx, %rdx",
          "role": "instruction",
          "annotations": [
            {
              "category": "RegisterRenamed",
              "violating": false
            }
          ]
        },
        {
          "line": 6,
          "text": "jne\t.La",
          "role": "instruction",
          "annotations": []
        },
        {
          "line": 7,
          "text": "jmp\t.Lb",
          "role": "instruction",
          "annotations": []
        },
        {
          "line": null,
          "text": "",
          "role": "group_break",
          "annotations": []
        },
        {
          "line": 8,
          "text": ".Lb:",
          "role": "label",
          "annotations": [
            {
              "category": "GroupReorder",
              "violating": false
            }
          ]
        },
        {
          "line": 9,
          "text": "notq\t%rax",
          "role": "instruction",
          "annotations": []
        },
        {
          "line": 10,
          "text": "jmp\t.Ldone",
          "role": "instruction",
          "annotations": []
        },
        {
          "line": null,
          "text": "",
          "role": "group_break",
          "annotations": []
        },
        {
          "line": 11,
          "text": ".La:",
          "role": "label",
          "annotations": [
            {
              "category": "GroupReorder",
              "violating": false
            }
          ]
        },
        {
          "line": 12,
          "text": "imulq\t%r8, %rax",
          "role": "instruction",
          "annotations": []
        },
        {
          "line": 13,
          "text": "jmp\t.Ldone",
          "role": "instruction",
          "annotations": []
        },
        {
          "line": null,
          "text": "",
          "role": "group_break",
          "annotations": []
        },
        {
          "line": 14,
          "text": ".Ldone:",
          "role": "label",
          "annotations": []
        },
        {
          "line": 15,
          "text": "subq\t$1, %rax",
          "role": "instruction",
          "annotations": []
        }
      ]
    }
  },
  "results": {
    "metric": "runtime",
    "param": "selectivity",
    "series": [
      {
        "label": "M.V3",
        "method": "M",
        "version": 3,
        "points": [
          {
            "param": 0.25,
            "value": 21.0,
            "unit": "ms",
            "build": "build4",
            "version": 3
          },
          {
            "param": 1.0,
            "value": 26.0,
            "unit": "ms",
            "build": "build4",
            "version": 3
          }
        ]
      },
      {
        "label": "B0.V2",
        "method": "B0",
        "version": 2,
        "points": [
          {
            "param": 0.25,
            "value": 22.0,
            "unit": "ms",
            "build": "build4",
            "version": 2
          },
          {
            "param": 1.0,
            "value": 27.0,
            "unit": "ms",
            "build": "build4",
            "version": 2
          }
        ]
      },
      {
        "label": "B1.V0",
        "method": "B1",
        "version": 0,
        "points": [
          {
            "param": 0.25,
            "value": 10.0,
            "unit": "ms",
            "build": "build0",
            "version": 0
          },
          {
            "param": 1.0,
            "value": 40.0,
            "unit": "ms",
            "build": "build0",
            "version": 0
          }
        ]
      },
      {
        "label": "B1.V1",
        "method": "B1",
        "version": 1,
        "points": [
          {
            "param": 0.25,
            "value": 22.0,
            "unit": "ms",
            "build": "build4",
            "version": 1
          },
          {
            "param": 1.0,
            "value": 27.0,
            "unit": "ms",
            "build": "build4",
            "version": 1
          }
        ]
      }
    ]
  }
};
