// Collapsible rendering of a parse tree; each node shows its category,
// head synset and score, and leaves carrying the root's headword chain
// are highlighted.

import { TreeNode } from "./bracket.js";

export function renderTree(root: TreeNode, doc: Document): HTMLElement {
  const container = doc.createElement("div");
  container.className = "parse-tree";
  container.appendChild(renderNode(root, doc, collectHeadLeaves(root)));
  return container;
}

function collectHeadLeaves(root: TreeNode): Set<TreeNode> {
  // walk the head chain: the leaf supplying each node's head synset
  const marked = new Set<TreeNode>();

  function headLeaf(node: TreeNode): TreeNode {
    if (node.children.length === 0) return node;
    const carrier =
      node.children.find((c) => c.head === node.head) ?? node.children[0]!;
    return headLeaf(carrier);
  }

  marked.add(headLeaf(root));
  return marked;
}

function renderNode(
  node: TreeNode,
  doc: Document,
  headLeaves: Set<TreeNode>,
): HTMLElement {
  if (node.children.length === 0) {
    const leaf = doc.createElement("div");
    leaf.className = "tree-leaf";
    leaf.dataset["category"] = node.category;
    leaf.dataset["head"] = node.head;
    const token = doc.createElement("span");
    token.className = headLeaves.has(node) ? "token headword" : "token";
    token.textContent = node.token ?? "";
    const sense = doc.createElement("span");
    sense.className = "sense";
    sense.textContent = `${node.category}:${node.head}`;
    leaf.append(token, sense);
    return leaf;
  }
  const details = doc.createElement("details");
  details.open = true;
  details.className = "tree-node";
  details.dataset["category"] = node.category;
  details.dataset["head"] = node.head;
  const summary = doc.createElement("summary");
  const label = doc.createElement("span");
  label.className = "category";
  label.textContent = node.category;
  const head = doc.createElement("span");
  head.className = "head";
  head.textContent = node.head;
  const score = doc.createElement("span");
  score.className = "score";
  score.textContent = node.score.toFixed(3);
  summary.append(label, head, score);
  details.appendChild(summary);
  for (const child of node.children) {
    details.appendChild(renderNode(child, doc, headLeaves));
  }
  return details;
}

// Rebuild the tree structure from rendered DOM; the round-trip test
// checks this equals the parsed bracket structure.
export function treeFromDom(element: Element): TreeNode {
  if (element.classList.contains("parse-tree")) {
    return treeFromDom(element.firstElementChild!);
  }
  const category = (element as HTMLElement).dataset["category"] ?? "";
  const head = (element as HTMLElement).dataset["head"] ?? "";
  if (element.classList.contains("tree-leaf")) {
    const token = element.querySelector(".token")?.textContent ?? "";
    return { category, head, score: 0, children: [], token };
  }
  const score = Number(element.querySelector(":scope > summary .score")
    ?.textContent ?? "0");
  const children: TreeNode[] = [];
  for (const child of Array.from(element.children)) {
    if (child.tagName.toLowerCase() === "summary") continue;
    children.push(treeFromDom(child));
  }
  return { category, head, score, children };
}
