// Parser and serializer for the service's bracketed tree text:
//   (CAT head=<synset> score=<float> child child)
//   (lexclass head=<synset> score=<float> "token")

export interface TreeNode {
  category: string;
  head: string;
  score: number;
  children: TreeNode[];
  token?: string;
}

const TOKEN_RE = /\(|\)|"[^"]*"|[^\s()"]+/g;

export function parseBracket(text: string): TreeNode {
  const tokens = text.match(TOKEN_RE);
  if (!tokens) throw new Error("empty bracket text");
  let pos = 0;

  function expect(tok: string): void {
    if (tokens![pos] !== tok) {
      throw new Error(`expected ${tok} at ${pos}, got ${tokens![pos]}`);
    }
    pos += 1;
  }

  function parseNode(): TreeNode {
    expect("(");
    const category = tokens![pos];
    if (category === undefined || category === "(" || category === ")") {
      throw new Error("missing category");
    }
    pos += 1;
    const node: TreeNode = { category, head: "", score: 0, children: [] };
    while (pos < tokens!.length && tokens![pos] !== ")") {
      const tok = tokens![pos]!;
      if (tok === "(") {
        node.children.push(parseNode());
      } else if (tok.startsWith('"')) {
        node.token = tok.slice(1, -1);
        pos += 1;
      } else if (tok.includes("=")) {
        const eq = tok.indexOf("=");
        const key = tok.slice(0, eq);
        const value = tok.slice(eq + 1);
        if (key === "head") node.head = value;
        else if (key === "score") node.score = Number(value);
        pos += 1;
      } else {
        throw new Error(`unexpected token ${tok}`);
      }
    }
    expect(")");
    if (!node.head) throw new Error(`node ${category} lacks head=`);
    if (node.children.length === 0 && node.token === undefined) {
      throw new Error(`node ${category} has neither token nor children`);
    }
    return node;
  }

  const root = parseNode();
  if (pos !== tokens.length) throw new Error("trailing bracket content");
  return root;
}

export function toBracket(node: TreeNode): string {
  const headScore = `head=${node.head} score=${formatScore(node.score)}`;
  if (node.children.length === 0) {
    return `(${node.category} ${headScore} "${node.token}")`;
  }
  const kids = node.children.map(toBracket).join(" ");
  return `(${node.category} ${headScore} ${kids})`;
}

function formatScore(score: number): string {
  // mirror Python's repr(float) closely enough for display round-trips
  if (Number.isInteger(score)) return `${score}.0`;
  return String(score);
}

export function leaves(node: TreeNode): TreeNode[] {
  if (node.children.length === 0) return [node];
  return node.children.flatMap(leaves);
}
